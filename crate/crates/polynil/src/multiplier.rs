//! Polynilpotent multipliers of finitely generated abelian groups.
//!
//! For `G = Z^m ⊕ Z_{n_1} ⊕ ... ⊕ Z_{n_k}` and a class row, the multiplier
//! is `Z^{f_m} ⊕ Z_{n_1}^{(f_{m+1}-f_m)} ⊕ ... ⊕ Z_{n_k}^{(f_{m+k}-f_{m+k-1})}`
//! with `f_i` the composed Witt exponents. Multiplicities grow fast, so
//! orders are kept in factored form and never expanded unless asked.

use crate::group::FGAbelianGroup;
use crate::witt::{chi_chain, ClassRow};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Abelian-group shape of a multiplier: a free rank plus torsion layers
/// `(modulus, multiplicity)` in descending-modulus order, normalized so
/// structural equality is canonical (no zero multiplicities, no unit
/// moduli, equal moduli merged).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplierStructure {
    free_rank: BigUint,
    layers: Vec<(BigUint, BigUint)>,
}

impl MultiplierStructure {
    /// Normalizing constructor: drops zero-multiplicity and modulus-1
    /// layers, merges runs of equal moduli.
    pub fn new(free_rank: BigUint, layers: Vec<(BigUint, BigUint)>) -> Self {
        let mut normalized: Vec<(BigUint, BigUint)> = Vec::new();
        for (modulus, multiplicity) in layers {
            if multiplicity.is_zero() || modulus <= BigUint::one() {
                continue;
            }
            match normalized.last_mut() {
                Some((m, acc)) if *m == modulus => *acc += multiplicity,
                _ => normalized.push((modulus, multiplicity)),
            }
        }
        MultiplierStructure { free_rank, layers: normalized }
    }

    pub fn trivial() -> Self {
        MultiplierStructure { free_rank: BigUint::zero(), layers: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank.is_zero() && self.layers.is_empty()
    }

    /// Torsion-free rank `f_m` of the multiplier.
    pub fn free_rank(&self) -> &BigUint {
        &self.free_rank
    }

    /// Torsion layers, descending moduli.
    pub fn layers(&self) -> &[(BigUint, BigUint)] {
        &self.layers
    }

    /// The torsion subgroup: same layers, free rank zeroed.
    pub fn torsion_part(&self) -> MultiplierStructure {
        MultiplierStructure { free_rank: BigUint::zero(), layers: self.layers.clone() }
    }

    /// Order of the structure: infinite when the free rank is positive,
    /// otherwise the factored product of `modulus^multiplicity`.
    pub fn order(&self) -> MultiplierOrder {
        if !self.free_rank.is_zero() {
            return MultiplierOrder::Infinite;
        }
        let mut order = FactoredOrder::one();
        for (modulus, multiplicity) in &self.layers {
            order.multiply_power(&FactoredOrder::of(modulus), multiplicity);
        }
        MultiplierOrder::Finite(order)
    }
}

impl fmt::Display for MultiplierStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = Vec::new();
        if self.free_rank.is_one() {
            terms.push("Z".to_string());
        } else if !self.free_rank.is_zero() {
            terms.push(format!("Z^({})", self.free_rank));
        }
        for (modulus, multiplicity) in &self.layers {
            if multiplicity.is_one() {
                terms.push(format!("Z_{modulus}"));
            } else {
                terms.push(format!("Z_{modulus}^({multiplicity})"));
            }
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Exact prime factorization `prime -> exponent`; exponents are
/// arbitrary-precision because multiplier multiplicities are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FactoredOrder {
    factors: BTreeMap<BigUint, BigUint>,
}

impl FactoredOrder {
    pub fn one() -> Self {
        FactoredOrder::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factorization of `n >= 1` by trial division.
    pub fn of(n: &BigUint) -> Self {
        assert!(!n.is_zero(), "cannot factor zero");
        let mut rest = n.clone();
        let mut factors = BTreeMap::new();
        let mut p = BigUint::from(2u32);
        while &p * &p <= rest {
            let mut e = BigUint::zero();
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1u32;
            }
            if !e.is_zero() {
                factors.insert(p.clone(), e);
            }
            p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
        }
        if !rest.is_one() {
            *factors.entry(rest).or_insert_with(BigUint::zero) += 1u32;
        }
        FactoredOrder { factors }
    }

    /// Multiplies `base^multiplicity` into this order.
    pub fn multiply_power(&mut self, base: &FactoredOrder, multiplicity: &BigUint) {
        if multiplicity.is_zero() {
            return;
        }
        for (p, e) in &base.factors {
            *self.factors.entry(p.clone()).or_insert_with(BigUint::zero) += e * multiplicity;
        }
    }

    /// `(prime, exponent)` pairs, ascending primes.
    pub fn factors(&self) -> impl Iterator<Item = (&BigUint, &BigUint)> {
        self.factors.iter()
    }

    pub fn divides(&self, other: &FactoredOrder) -> bool {
        self.factors.iter().all(|(p, e)| other.factors.get(p).is_some_and(|oe| e <= oe))
    }

    /// Expands the factorization; exponents must fit in `u32`.
    pub fn value(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, (p, e)| {
            acc * p.pow(u32::try_from(e).expect("exponent too large to expand"))
        })
    }
}

impl fmt::Display for FactoredOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let terms: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if e.is_one() { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", terms.join("*"))
    }
}

/// Order of a multiplier structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplierOrder {
    Finite(FactoredOrder),
    Infinite,
}

impl MultiplierOrder {
    pub fn finite(&self) -> Option<&FactoredOrder> {
        match self {
            MultiplierOrder::Finite(o) => Some(o),
            MultiplierOrder::Infinite => None,
        }
    }
}

impl fmt::Display for MultiplierOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplierOrder::Finite(o) => o.fmt(f),
            MultiplierOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// The explicit multiplier of `g` with respect to the polynilpotent
/// variety named by `row`.
///
/// The exponent sequence is checked to be non-decreasing so every layer
/// multiplicity `f_{m+i} - f_{m+i-1}` is a genuine non-negative count.
pub fn polynilpotent_multiplier(g: &FGAbelianGroup, row: &ClassRow) -> MultiplierStructure {
    let m = g.rank();
    let exponents: Vec<BigUint> = (0..=g.torsion().len()).map(|i| chi_chain(row, m + i)).collect();
    for (i, w) in exponents.windows(2).enumerate() {
        assert!(
            w[0] <= w[1],
            "exponent sequence decreased at f_{}: {} > {}",
            m + i + 1,
            w[0],
            w[1]
        );
    }
    let layers = g
        .torsion()
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), &exponents[i + 1] - &exponents[i]))
        .collect();
    MultiplierStructure::new(exponents[0].clone(), layers)
}
