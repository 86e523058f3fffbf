//! Möbius function, Witt numbers, and composed exponent sequences.
//!
//! The Witt number `witt(w, d) = (1/w) Σ_{e|w} μ(e) d^{w/e}` counts basic
//! commutators of weight `w` on `d` generators. Composing Witt numbers
//! along a class row produces the exponent sequence `f_i` that shapes every
//! multiplier structure downstream.

use crate::arith::{divisors_u64, factor_u64};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

/// Class row `(c_1, ..., c_t)` naming a polynilpotent variety; non-empty,
/// every class at least 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassRow {
    classes: Vec<u32>,
}

impl ClassRow {
    pub fn new(classes: Vec<u32>) -> Result<Self> {
        if classes.is_empty() || classes.iter().any(|&c| c < 1) {
            return Err(Error::InvalidClassRow);
        }
        Ok(ClassRow { classes })
    }

    /// Row literal; panics if invalid.
    pub fn of(classes: &[u32]) -> Self {
        ClassRow::new(classes.to_vec()).expect("class row literal must be valid")
    }

    pub fn classes(&self) -> &[u32] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // rows are non-empty by construction
    }

    /// True when multipliers under this row vanish for every abelian group
    /// on at most two generators (row length at least 2 with first class 1);
    /// otherwise they vanish only for cyclic groups.
    pub fn has_two_generator_vanishing(&self) -> bool {
        self.classes.len() >= 2 && self.classes[0] == 1
    }

    /// Largest generator count below which multipliers under this row are
    /// forced trivial: 2 in the two-generator-vanishing case, 1 otherwise.
    pub fn vanishing_bound(&self) -> usize {
        if self.has_two_generator_vanishing() {
            2
        } else {
            1
        }
    }
}

impl std::fmt::Display for ClassRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.classes.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Möbius function: 0 on non-squarefree inputs, otherwise `(-1)^#primes`.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::NonPositiveArgument("mobius"));
    }
    let mut sign = 1i8;
    for (_, e) in factor_u64(n) {
        if e > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

static WITT_MEMO: LazyLock<Mutex<HashMap<(u64, BigUint), BigUint>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Witt number `(1/w) Σ_{e|w} μ(e) d^{w/e}`; requires `w >= 1`.
///
/// The Möbius sum is always divisible by `w`; this is asserted rather than
/// assumed. Results are memoized per `(w, d)` in a shared table.
pub fn witt(w: u64, d: &BigUint) -> BigUint {
    assert!(w >= 1, "witt weight must be at least 1");
    let key = (w, d.clone());
    if let Some(hit) = WITT_MEMO.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let mut sum = BigInt::zero();
    for e in divisors_u64(w) {
        let mu = mobius(e).expect("divisors are positive");
        if mu == 0 {
            continue;
        }
        let exp = u32::try_from(w / e).expect("weight exponent fits in u32");
        let term = BigInt::from(d.pow(exp));
        if mu > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = num_integer::Integer::div_rem(&sum, &BigInt::from(w));
    assert!(r.is_zero(), "Witt sum for (w={w}, d={d}) not divisible by w");
    assert!(!q.is_negative(), "Witt number for (w={w}, d={d}) negative");
    let result = q.to_biguint().expect("non-negative");
    WITT_MEMO.lock().unwrap().insert(key, result.clone());
    result
}

/// Convenience wrapper for machine-word arguments.
pub fn witt_u64(w: u64, d: u64) -> BigUint {
    witt(w, &BigUint::from(d))
}

/// Exponent `f_i` for a class row: the composition
/// `witt(c_t + 1, ... witt(c_2 + 1, witt(c_1 + 1, i)) ...)`, innermost
/// weight coming from the first class.
pub fn chi_chain(row: &ClassRow, i: usize) -> BigUint {
    let mut x = BigUint::from(i);
    for &c in row.classes() {
        x = witt(u64::from(c) + 1, &x);
    }
    x
}
