//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group is stored as `Z^rank ⊕ Z_{n_1} ⊕ ... ⊕ Z_{n_k}` with the torsion
//! chain descending (`n_{i+1} | n_i`, every `n_i >= 2`). All structural
//! operations (canonicalization, quotients, generated subgroups) are exact
//! and grounded in Smith normal form of integer relation matrices.

use crate::arith::factor_u64;
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMatrix};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Canonical presentation of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<BigUint>,
}

/// An element of a fixed ambient [`FGAbelianGroup`]: integer coordinates on
/// the free summands and reduced residues on the torsion summands.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    free: Vec<BigInt>,
    torsion: Vec<BigUint>,
}

/// Order of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Finite(BigUint),
    Infinite,
}

impl Cardinality {
    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinality::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Cardinality::Finite(n) => Some(n),
            Cardinality::Infinite => None,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => write!(f, "infinite"),
        }
    }
}

impl FGAbelianGroup {
    /// Strict constructor: the torsion chain must already be canonical
    /// (every entry `>= 2`, descending divisibility).
    pub fn new(rank: usize, torsion: Vec<BigUint>) -> Result<Self> {
        let two = BigUint::from(2u32);
        for n in &torsion {
            if *n < two {
                return Err(Error::NotCanonical(format!("unit or zero factor {n}")));
            }
        }
        for w in torsion.windows(2) {
            if !(&w[0] % &w[1]).is_zero() {
                return Err(Error::NotCanonical(format!("{} does not divide {}", w[1], w[0])));
            }
        }
        Ok(FGAbelianGroup { rank, torsion })
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        FGAbelianGroup { rank: 0, torsion: Vec::new() }
    }

    /// Free abelian group of the given rank.
    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { rank, torsion: Vec::new() }
    }

    /// Finite group from an already-canonical `u64` chain; panics if the
    /// chain is not canonical. Intended for literals.
    pub fn finite(chain: &[u64]) -> Self {
        Self::with_rank(0, chain)
    }

    /// Group of the given rank from an already-canonical `u64` chain.
    pub fn with_rank(rank: usize, chain: &[u64]) -> Self {
        FGAbelianGroup::new(rank, chain.iter().map(|&n| BigUint::from(n)).collect())
            .expect("chain literal must be canonical")
    }

    /// Normalizes an arbitrary direct sum `Z^rank ⊕ (⊕ Z_{moduli[i]})` into
    /// invariant-factor form via the Smith normal form of the diagonal
    /// relation matrix. Unit moduli vanish; zero moduli are rejected.
    pub fn canonicalize(rank: usize, moduli: &[BigUint]) -> Result<Self> {
        if moduli.iter().any(Zero::is_zero) {
            return Err(Error::NonPositiveModulus);
        }
        let n = moduli.len();
        let mut rel = IntMatrix::zero(n, n);
        for (i, m) in moduli.iter().enumerate() {
            rel[(i, i)] = BigInt::from(m.clone());
        }
        let snf = smith_normal_form(&rel);
        Ok(Self::from_relation_cokernel(rank + n, &snf.d.diagonal()))
    }

    /// Cokernel `Z^ambient_rank / (relation lattice)` from an SNF diagonal.
    fn from_relation_cokernel(ambient_rank: usize, diagonal: &[BigInt]) -> Self {
        let nonzero = diagonal.iter().filter(|d| !d.is_zero()).count();
        let torsion: Vec<BigUint> = diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .rev()
            .map(|d| d.to_biguint().expect("SNF diagonal is non-negative"))
            .collect();
        let group = FGAbelianGroup { rank: ambient_rank - nonzero, torsion };
        debug_assert!(
            FGAbelianGroup::new(group.rank, group.torsion.clone()).is_ok(),
            "SNF diagonal must yield a canonical chain"
        );
        group
    }

    /// Torsion-free rank (the number of `Z` summands).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Invariant factors `n_1 >= n_2 >= ...`, descending divisor chain.
    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Smallest size of a generating set: rank plus torsion length.
    pub fn min_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn order(&self) -> Cardinality {
        if self.rank > 0 {
            return Cardinality::Infinite;
        }
        Cardinality::Finite(self.torsion.iter().product())
    }

    /// Builds an element after validating shape; torsion residues are
    /// reduced modulo the corresponding invariant factor.
    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigUint>) -> Result<GroupElement> {
        if free.len() != self.rank || torsion.len() != self.torsion.len() {
            return Err(Error::ShapeMismatch { rank: self.rank, torsion: self.torsion.len() });
        }
        let torsion = torsion.into_iter().zip(&self.torsion).map(|(a, n)| a % n).collect();
        Ok(GroupElement { free, torsion })
    }

    /// Element from fixed-width literals; panics on shape mismatch.
    pub fn element_from(&self, free: &[i64], torsion: &[u64]) -> GroupElement {
        self.element(
            free.iter().map(|&x| BigInt::from(x)).collect(),
            torsion.iter().map(|&x| BigUint::from(x)).collect(),
        )
        .expect("element literal must match the group shape")
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.rank],
            torsion: vec![BigUint::zero(); self.torsion.len()],
        }
    }

    fn check_shape(&self, e: &GroupElement) -> Result<()> {
        if e.free.len() != self.rank
            || e.torsion.len() != self.torsion.len()
            || e.torsion.iter().zip(&self.torsion).any(|(a, n)| a >= n)
        {
            return Err(Error::ShapeMismatch { rank: self.rank, torsion: self.torsion.len() });
        }
        Ok(())
    }

    /// Sum of two elements of this group.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.check_shape(a).expect("lhs not in group");
        self.check_shape(b).expect("rhs not in group");
        GroupElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        }
    }

    /// Additive inverse.
    pub fn negate(&self, a: &GroupElement) -> GroupElement {
        self.check_shape(a).expect("element not in group");
        GroupElement {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion)
                .map(|(x, n)| if x.is_zero() { BigUint::zero() } else { n - x })
                .collect(),
        }
    }

    /// Canonical form of `self / <gens>`: the cokernel of the stacked
    /// relation matrix (diagonal torsion relations plus one row per
    /// generator lift).
    pub fn quotient_by_subgroup(&self, gens: &[GroupElement]) -> Result<FGAbelianGroup> {
        for g in gens {
            self.check_shape(g)?;
        }
        let cols = self.rank + self.torsion.len();
        let mut entries: Vec<BigInt> = Vec::with_capacity((self.torsion.len() + gens.len()) * cols);
        for (i, n) in self.torsion.iter().enumerate() {
            let mut row = vec![BigInt::zero(); cols];
            row[self.rank + i] = BigInt::from(n.clone());
            entries.extend(row);
        }
        for g in gens {
            entries.extend(g.free.iter().cloned());
            entries.extend(g.torsion.iter().map(|a| BigInt::from(a.clone())));
        }
        let rel = IntMatrix::new(self.torsion.len() + gens.len(), cols, entries);
        let snf = smith_normal_form(&rel);
        Ok(Self::from_relation_cokernel(cols, &snf.d.diagonal()))
    }

    /// Streams every element of a finite group exactly once, identity
    /// first, in lexicographic order of the reduced residue vectors.
    pub fn elements(&self) -> Result<Elements> {
        if self.rank > 0 {
            return Err(Error::InfiniteGroup { rank: self.rank });
        }
        Ok(Elements {
            moduli: self.torsion.clone(),
            next: Some(vec![BigUint::zero(); self.torsion.len()]),
        })
    }

    /// Isomorphism type of the subgroup generated by `gens`, computed by
    /// closure under addition. Generators of infinite order (nonzero free
    /// part in an infinite ambient group) are unsupported.
    pub fn subgroup_generated(&self, gens: &[GroupElement]) -> Result<FGAbelianGroup> {
        for g in gens {
            self.check_shape(g)?;
        }
        if gens.iter().any(|g| g.free.iter().any(|x| !x.is_zero())) {
            return Err(Error::InfiniteSubgroupClosure);
        }
        let members = self.torsion_closure(gens);
        Ok(finite_type_from_elements(&self.torsion, &members))
    }

    /// Closure of the torsion parts of `gens` under addition. Callers must
    /// have checked that the free parts vanish.
    fn torsion_closure(&self, gens: &[GroupElement]) -> BTreeSet<Vec<BigUint>> {
        let gen_vecs: Vec<&[BigUint]> = gens.iter().map(|g| g.torsion.as_slice()).collect();
        let zero = vec![BigUint::zero(); self.torsion.len()];
        let mut seen = BTreeSet::new();
        seen.insert(zero.clone());
        let mut stack = vec![zero];
        while let Some(x) = stack.pop() {
            for g in &gen_vecs {
                let y: Vec<BigUint> = x
                    .iter()
                    .zip(g.iter())
                    .zip(&self.torsion)
                    .map(|((a, b), n)| (a + b) % n)
                    .collect();
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut terms: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            m => terms.push(format!("Z^{m}")),
        }
        terms.extend(self.torsion.iter().map(|n| format!("Z{n}")));
        write!(f, "{}", terms.join(" + "))
    }
}

impl GroupElement {
    pub fn free_part(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_identity(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self
            .free
            .iter()
            .map(BigInt::to_string)
            .chain(self.torsion.iter().map(BigUint::to_string))
            .collect();
        write!(f, "({})", coords.join(", "))
    }
}

/// Iterator over all elements of a finite group; see
/// [`FGAbelianGroup::elements`].
pub struct Elements {
    moduli: Vec<BigUint>,
    next: Option<Vec<BigUint>>,
}

impl Iterator for Elements {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let current = self.next.take()?;
        // lexicographic successor: bump the last coordinate, carry leftward
        let mut succ = current.clone();
        let mut i = self.moduli.len();
        loop {
            if i == 0 {
                break; // wrapped past the first coordinate: exhausted
            }
            i -= 1;
            succ[i] += 1u32;
            if succ[i] < self.moduli[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = BigUint::zero();
        }
        Some(GroupElement { free: Vec::new(), torsion: current })
    }
}

/// Shape test for finite subgroups: with `h`'s chain `(m_1, ..)` padded by
/// implicit units up to the length of `g`'s chain `(n_1, ..)`, checks
/// `m_i | n_i` for every position. The divisor chain within `h` itself is
/// guaranteed by its canonical form.
pub fn is_valid_subgroup_shape(h: &FGAbelianGroup, g: &FGAbelianGroup) -> bool {
    if h.torsion.len() > g.torsion.len() {
        return false;
    }
    h.torsion.iter().zip(&g.torsion).all(|(m, n)| (n % m).is_zero())
}

/// Every isomorphism type of finite abelian group of order at most
/// `order_bound`, exactly once, grouped by ascending order and sorted
/// within each order by the canonical-form ordering.
pub fn enumerate_abelian_groups(order_bound: u64) -> impl Iterator<Item = FGAbelianGroup> {
    (1..=order_bound).flat_map(abelian_groups_of_order)
}

/// All isomorphism types of a single finite order, sorted.
pub fn abelian_groups_of_order(n: u64) -> Vec<FGAbelianGroup> {
    assert!(n >= 1, "group order must be positive");
    let factored = factor_u64(n);
    // one integer partition per prime exponent, combined positionally
    let mut combos: Vec<Vec<(u64, Vec<u32>)>> = vec![Vec::new()];
    for (p, e) in factored {
        let parts = partitions(e);
        combos = combos
            .into_iter()
            .flat_map(|c| {
                parts.iter().map(move |lambda| {
                    let mut next = c.clone();
                    next.push((p, lambda.clone()));
                    next
                })
            })
            .collect();
    }
    let mut out: Vec<FGAbelianGroup> = combos.iter().map(|c| combine_primary_parts(c)).collect();
    out.sort();
    out
}

/// Merges per-prime partitions `(p, λ^{(p)})` into one invariant-factor
/// chain: position `i` collects `p^{λ^{(p)}_i}` over all primes.
fn combine_primary_parts(parts: &[(u64, Vec<u32>)]) -> FGAbelianGroup {
    let k = parts.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
    let torsion: Vec<BigUint> = (0..k)
        .map(|i| {
            parts.iter().fold(BigUint::one(), |acc, (p, lambda)| {
                acc * BigUint::from(*p).pow(lambda.get(i).copied().unwrap_or(0))
            })
        })
        .collect();
    FGAbelianGroup::new(0, torsion).expect("positional products form a divisor chain")
}

/// Integer partitions of `n` with parts descending, in descending
/// lexicographic order; `partitions(0)` is the empty partition.
pub(crate) fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Recovers the isomorphism type of a finite subgroup from its full
/// element set inside `Z_{n_1} ⊕ ... ⊕ Z_{n_k}`. For each prime `p`, the
/// counts `#{x : p^j x = 0}` determine the partition of the `p`-primary
/// component; positional products across primes give the chain.
fn finite_type_from_elements(moduli: &[BigUint], elems: &BTreeSet<Vec<BigUint>>) -> FGAbelianGroup {
    let order = u64::try_from(elems.len()).expect("closure fits in u64");
    if order == 1 {
        return FGAbelianGroup::trivial();
    }
    let parts: Vec<(u64, Vec<u32>)> = factor_u64(order)
        .into_iter()
        .map(|(p, _)| (p, primary_partition(moduli, elems, p)))
        .collect();
    combine_primary_parts(&parts)
}

/// Partition `λ` of the `p`-primary component, from the annihilator counts
/// `τ_j = log_p #{x : p^j x = 0}`: the conjugate partition is
/// `λ'_j = τ_j − τ_{j−1}`.
fn primary_partition(moduli: &[BigUint], elems: &BTreeSet<Vec<BigUint>>, p: u64) -> Vec<u32> {
    let mut conjugate: Vec<u32> = Vec::new();
    let mut prev_tau = 0u32;
    let mut pj = BigUint::one();
    loop {
        pj *= p;
        let killed = elems
            .iter()
            .filter(|x| x.iter().zip(moduli).all(|(c, n)| ((c * &pj) % n).is_zero()))
            .count();
        let tau = exact_log(killed as u64, p);
        if tau == prev_tau {
            break;
        }
        conjugate.push(tau - prev_tau);
        prev_tau = tau;
    }
    // conjugate back: λ_i = #{j : λ'_j >= i}
    let Some(&first) = conjugate.first() else {
        return Vec::new();
    };
    (1..=first).map(|i| conjugate.iter().filter(|&&c| c >= i).count() as u32).collect()
}

fn exact_log(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 1 {
        assert!(n.is_multiple_of(p), "annihilator count {n} is not a power of {p}");
        n /= p;
        e += 1;
    }
    e
}
