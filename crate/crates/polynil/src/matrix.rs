//! Arbitrary-precision integer matrices and Smith normal form.
//!
//! Everything downstream (canonical forms, quotients, subgroup structure)
//! reduces to computing the Smith normal form of an integer relation matrix,
//! so this module carries the transformation witnesses `u`, `v` with
//! `u * a * v = d` and keeps all arithmetic exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix, row-major, arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds a matrix from row-major entries. Panics unless
    /// `entries.len() == rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count {} does not match {}x{}",
            entries.len(),
            rows,
            cols
        );
        IntMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for fixed-width integer literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Diagonal entries `(0,0), (1,1), ...` up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .all(|(i, j)| i == j || self[(i, j)].is_zero())
    }

    /// Submatrix on the given row and column index sets (order preserved).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let entries =
            rows.iter().flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone())).collect();
        IntMatrix::new(rows.len(), cols.len(), entries)
    }

    /// Determinant by fraction-free (Bareiss) elimination. Panics on
    /// non-square input. Exact for any entry size.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    // exact by the Bareiss identity
                    m[(i, j)] = num / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * &self[(k, j)];
            self[(i, j)] -= delta;
        }
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * &self[(i, k)];
            self[(i, j)] -= delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `u * a * v = d` with unimodular `u`, `v` and the
/// diagonal of `d` a non-negative divisor chain `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries of `d` (the invariant factors of the
    /// cokernel that are not forced free summands).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    /// Rank of the input matrix: number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Computes the Smith normal form of `a`.
///
/// Pivot selection takes the smallest-absolute-value nonzero entry of the
/// working submatrix, which keeps intermediate entry growth manageable
/// without giving up exactness. Empty and zero matrices are fine.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());

    let steps = a.rows().min(a.cols());
    for t in 0..steps {
        if !place_pivot(&mut d, &mut u, &mut v, t) {
            break; // remaining submatrix is zero
        }
        reduce_pivot(&mut d, &mut u, &mut v, t);
    }

    // Normalize diagonal signs; row negation is unimodular.
    for t in 0..steps {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfResult { d, u, v }
}

/// Moves the smallest-absolute-value nonzero entry of `d[t.., t..]` to
/// `(t, t)`. Returns false if the submatrix is zero.
fn place_pivot(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            if d[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some(b) if d[b].abs() <= d[(i, j)].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    let Some((pi, pj)) = best else {
        return false;
    };
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);
    true
}

/// Clears row and column `t` outside the pivot and makes the pivot divide
/// every entry of the trailing submatrix. On entry the pivot is the
/// smallest nonzero entry of `d[t.., t..]`.
fn reduce_pivot(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) {
    loop {
        // Reduce column t by row operations; truncated quotients leave
        // remainders strictly smaller than the pivot.
        let mut leftover = false;
        for i in t + 1..d.rows() {
            if d[(i, t)].is_zero() {
                continue;
            }
            let q = &d[(i, t)] / &d[(t, t)];
            d.row_sub(i, t, &q);
            u.row_sub(i, t, &q);
            leftover |= !d[(i, t)].is_zero();
        }
        for j in t + 1..d.cols() {
            if d[(t, j)].is_zero() {
                continue;
            }
            let q = &d[(t, j)] / &d[(t, t)];
            d.col_sub(j, t, &q);
            v.col_sub(j, t, &q);
            leftover |= !d[(t, j)].is_zero();
        }
        if leftover {
            // A remainder beat the pivot; promote the new minimum and retry.
            place_pivot(d, u, v, t);
            continue;
        }

        // Row and column t are clear. Enforce divisibility of the trailing
        // submatrix so the diagonal comes out as a divisor chain.
        let offender = (t + 1..d.rows())
            .flat_map(|i| (t + 1..d.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| !(&d[(i, j)] % &d[(t, t)]).is_zero());
        match offender {
            Some((i, _)) => {
                // Fold the offending row into row t; the next pass shrinks
                // the pivot toward the gcd.
                let minus_one = -BigInt::one();
                d.row_sub(t, i, &minus_one);
                u.row_sub(t, i, &minus_one);
            }
            None => return,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};

    fn snf_holds(a: &IntMatrix, snf: &SnfResult) {
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d, "u*a*v != d");
        assert!(snf.u.determinant().abs().is_one(), "u not unimodular");
        assert!(snf.v.determinant().abs().is_one(), "v not unimodular");
        assert!(snf.d.is_diagonal(), "d not diagonal");
        let diag = snf.d.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative(), "negative diagonal");
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zero before nonzero in chain");
            } else {
                assert!((&w[1] % &w[0]).is_zero(), "divisor chain broken: {:?}", diag);
            }
        }
    }

    #[test]
    fn one_by_one_is_fixed() {
        let a = IntMatrix::from_i64_rows(&[&[2]]);
        let snf = smith_normal_form(&a);
        snf_holds(&a, &snf);
        assert_eq!(snf.d, IntMatrix::from_i64_rows(&[&[2]]));
        assert_eq!(snf.u, IntMatrix::identity(1));
        assert_eq!(snf.v, IntMatrix::identity(1));
    }

    #[test]
    fn stacked_relation_matrix() {
        // gcd of entries is 1; gcd of 2x2 minors is 4
        let a = IntMatrix::from_i64_rows(&[&[4, 0], &[0, 2], &[2, 1]]);
        let snf = smith_normal_form(&a);
        snf_holds(&a, &snf);
        assert_eq!(
            snf.d.diagonal(),
            vec![BigInt::one(), BigInt::from(4)],
            "expected invariant factors (1, 4)"
        );
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zero(2, 2);
        let snf = smith_normal_form(&a);
        snf_holds(&a, &snf);
        assert_eq!(snf.d.diagonal(), vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let a = IntMatrix::zero(r, c);
            let snf = smith_normal_form(&a);
            snf_holds(&a, &snf);
        }
    }

    #[test]
    fn diagonal_out_of_order() {
        let a = IntMatrix::from_i64_rows(&[&[6, 0], &[0, 4]]);
        let snf = smith_normal_form(&a);
        snf_holds(&a, &snf);
        assert_eq!(snf.d.diagonal(), vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(a.determinant(), BigInt::from(-3));
        let b = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(b.determinant(), BigInt::from(-1));
        let singular = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.determinant().is_zero());
        assert_eq!(IntMatrix::identity(0).determinant(), BigInt::one());
    }

    #[test]
    fn negative_entries_normalize() {
        let a = IntMatrix::from_i64_rows(&[&[-3]]);
        let snf = smith_normal_form(&a);
        snf_holds(&a, &snf);
        assert_eq!(snf.d.diagonal(), vec![BigInt::from(3)]);
    }

    // Independent oracle: d_1 * ... * d_j equals the gcd of all j x j
    // minors, computed here straight from the definition.
    fn minor_gcd(a: &IntMatrix, j: usize) -> BigInt {
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if k > n {
                return vec![];
            }
            let mut out = Vec::new();
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                out.push(idx.clone());
                let mut i = k;
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    if idx[i] != i + n - k {
                        break;
                    }
                }
                idx[i] += 1;
                for l in i + 1..k {
                    idx[l] = idx[l - 1] + 1;
                }
            }
        }
        let mut g = BigInt::zero();
        for rs in combos(a.rows(), j) {
            for cs in combos(a.cols(), j) {
                g = num_integer::Integer::gcd(&g, &a.submatrix(&rs, &cs).determinant());
            }
        }
        g
    }

    #[test]
    fn minor_gcd_ladder_small() {
        let a = IntMatrix::from_i64_rows(&[&[4, 0], &[0, 2], &[2, 1]]);
        let snf = smith_normal_form(&a);
        let diag = snf.invariant_factors();
        let mut prod = BigInt::one();
        for (j, dj) in diag.iter().enumerate() {
            prod *= dj;
            assert_eq!(prod, minor_gcd(&a, j + 1));
        }
    }

    proptest::proptest! {
        #[test]
        fn snf_properties_random(
            rows in 1usize..5,
            cols in 1usize..5,
            seed in proptest::collection::vec(-30i64..30, 16),
        ) {
            let entries: Vec<BigInt> =
                seed.iter().cycle().take(rows * cols).map(|&x| BigInt::from(x)).collect();
            let a = IntMatrix::new(rows, cols, entries);
            let snf = smith_normal_form(&a);
            snf_holds(&a, &snf);

            // minor-gcd ladder up to the rank
            let diag = snf.invariant_factors();
            let mut prod = BigInt::one();
            for (j, dj) in diag.iter().enumerate() {
                prod *= dj;
                proptest::prop_assert_eq!(&prod, &minor_gcd(&a, j + 1));
            }
        }
    }
}
