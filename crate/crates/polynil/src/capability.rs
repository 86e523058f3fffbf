//! Varietal capability of finitely generated abelian groups.
//!
//! Two independent routes produce verdicts. The closed form applies the
//! invariant-factor criteria directly: with `b` the row's vanishing bound
//! (1 or 2), a finite group is capable iff its chain has at least `b + 1`
//! entries with the top `b + 1` equal, and an infinite group iff its rank
//! is at least `b + 1`. The oracle instead quotients by every cyclic
//! subgroup and compares multiplier orders: the group is capable exactly
//! when no nontrivial cyclic quotient preserves the multiplier order (an
//! order-preserving quotient means the natural map on multipliers is
//! injective, which certifies non-capability).

use crate::error::{Error, Result};
use crate::group::{FGAbelianGroup, GroupElement};
use crate::multiplier::{polynilpotent_multiplier, MultiplierOrder};
use crate::witt::ClassRow;
use std::collections::BTreeSet;
use std::fmt;

/// Which classification case produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// The trivial group is capable for every row (witnessed by E = 1).
    TrivialGroup,
    /// Finite group, base rows: capable iff `k >= 2` and `n_1 = n_2`.
    FiniteTopTwo,
    /// Finite group, two-generator-vanishing rows: capable iff `k >= 3`
    /// and `n_1 = n_2 = n_3`.
    FiniteTopThree,
    /// Infinite group, base rows: capable iff `m >= 2`.
    InfiniteRankTwo,
    /// Infinite group, two-generator-vanishing rows: capable iff `m >= 3`.
    InfiniteRankThree,
    /// Exhaustive cyclic-quotient search decided the verdict.
    Oracle,
}

impl Rule {
    /// Stable machine-readable tag.
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::TrivialGroup => "trivial-group",
            Rule::FiniteTopTwo => "finite-top-two-equal",
            Rule::FiniteTopThree => "finite-top-three-equal",
            Rule::InfiniteRankTwo => "infinite-rank-at-least-two",
            Rule::InfiniteRankThree => "infinite-rank-at-least-three",
            Rule::Oracle => "oracle",
        }
    }

    /// Human-readable criterion text.
    pub fn describe(&self) -> &'static str {
        match self {
            Rule::TrivialGroup => "trivial group special case",
            Rule::FiniteTopTwo => "finite criterion: k >= 2 and n1 = n2",
            Rule::FiniteTopThree => "finite criterion: k >= 3 and n1 = n2 = n3",
            Rule::InfiniteRankTwo => "infinite criterion: rank >= 2",
            Rule::InfiniteRankThree => "infinite criterion: rank >= 3",
            Rule::Oracle => "exhaustive cyclic-quotient search",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Capability verdict with provenance; a non-capable oracle verdict also
/// carries the witness element whose cyclic quotient preserved the
/// multiplier order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapabilityVerdict {
    capable: bool,
    rule: Rule,
    witness: Option<GroupElement>,
}

impl CapabilityVerdict {
    fn capable(rule: Rule) -> Self {
        CapabilityVerdict { capable: true, rule, witness: None }
    }

    fn not_capable(rule: Rule, witness: Option<GroupElement>) -> Self {
        CapabilityVerdict { capable: false, rule, witness }
    }

    pub fn is_capable(&self) -> bool {
        self.capable
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    /// Witness of non-capability, when one was found; always absent on
    /// capable verdicts.
    pub fn witness(&self) -> Option<&GroupElement> {
        self.witness.as_ref()
    }
}

/// The epicenter of a finite group: the set of elements whose cyclic
/// quotients preserve the multiplier order, together with its isomorphism
/// type and the quotient by it (the largest capable quotient).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpicenterResult {
    members: Vec<GroupElement>,
    structure: FGAbelianGroup,
    quotient: FGAbelianGroup,
}

impl EpicenterResult {
    /// Member elements in enumeration order, identity first.
    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn structure(&self) -> &FGAbelianGroup {
        &self.structure
    }

    pub fn quotient(&self) -> &FGAbelianGroup {
        &self.quotient
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// Closed-form capability classification.
///
/// The trivial group is handled as an explicit special case: the chain
/// criteria formally exclude it, but it is capable for every row.
pub fn is_capable_closed_form(g: &FGAbelianGroup, row: &ClassRow) -> CapabilityVerdict {
    if g.is_trivial() {
        return CapabilityVerdict::capable(Rule::TrivialGroup);
    }
    let bound = row.vanishing_bound();
    if g.is_finite() {
        let chain = g.torsion();
        let rule = if bound == 1 { Rule::FiniteTopTwo } else { Rule::FiniteTopThree };
        // descending chain: equal endpoints force equality in between
        let capable = chain.len() > bound && chain[0] == chain[bound];
        if capable {
            CapabilityVerdict::capable(rule)
        } else {
            CapabilityVerdict::not_capable(rule, None)
        }
    } else {
        let rule = if bound == 1 { Rule::InfiniteRankTwo } else { Rule::InfiniteRankThree };
        if g.rank() > bound {
            CapabilityVerdict::capable(rule)
        } else {
            CapabilityVerdict::not_capable(rule, None)
        }
    }
}

/// True iff the natural map from the multiplier of `g` to the multiplier
/// of `g / <gens>` is injective, decided by order equality in factored
/// form. Requires `g` finite.
pub fn injectivity_test(g: &FGAbelianGroup, gens: &[GroupElement], row: &ClassRow) -> Result<bool> {
    if !g.is_finite() {
        return Err(Error::InfiniteGroup { rank: g.rank() });
    }
    let base = polynilpotent_multiplier(g, row).order();
    quotient_preserves_order(g, &base, gens, row)
}

fn quotient_preserves_order(
    g: &FGAbelianGroup,
    base: &MultiplierOrder,
    gens: &[GroupElement],
    row: &ClassRow,
) -> Result<bool> {
    let quotient = g.quotient_by_subgroup(gens)?;
    Ok(polynilpotent_multiplier(&quotient, row).order() == *base)
}

/// Brute-force capability oracle: `g` is capable iff no nontrivial cyclic
/// quotient preserves the multiplier order. The witness, when present, is
/// the first (lexicographically smallest) order-preserving element.
pub fn is_capable_oracle(g: &FGAbelianGroup, row: &ClassRow) -> Result<CapabilityVerdict> {
    if !g.is_finite() {
        return Err(Error::InfiniteGroup { rank: g.rank() });
    }
    let base = polynilpotent_multiplier(g, row).order();
    for x in g.elements()? {
        if x.is_identity() {
            continue;
        }
        if quotient_preserves_order(g, &base, std::slice::from_ref(&x), row)? {
            return Ok(CapabilityVerdict::not_capable(Rule::Oracle, Some(x)));
        }
    }
    Ok(CapabilityVerdict::capable(Rule::Oracle))
}

/// Computes the epicenter elementwise: an element belongs exactly when its
/// cyclic quotient preserves the multiplier order. The member set is
/// checked to be closed under addition and negation before the structure
/// and quotient are formed.
pub fn epicenter(g: &FGAbelianGroup, row: &ClassRow) -> Result<EpicenterResult> {
    if !g.is_finite() {
        return Err(Error::InfiniteGroup { rank: g.rank() });
    }
    let base = polynilpotent_multiplier(g, row).order();
    let mut members = vec![g.identity()];
    for x in g.elements()? {
        if x.is_identity() {
            continue;
        }
        if quotient_preserves_order(g, &base, std::slice::from_ref(&x), row)? {
            members.push(x);
        }
    }

    let member_set: BTreeSet<&GroupElement> = members.iter().collect();
    for a in &members {
        assert!(
            member_set.contains(&g.negate(a)),
            "epicenter of {g} not closed under negation at {a}"
        );
        for b in &members {
            assert!(
                member_set.contains(&g.add(a, b)),
                "epicenter of {g} not closed under addition at {a} + {b}"
            );
        }
    }

    let structure = g.subgroup_generated(&members)?;
    let quotient = g.quotient_by_subgroup(&members)?;
    Ok(EpicenterResult { members, structure, quotient })
}

/// The largest capable quotient `g / epicenter(g)`.
pub fn largest_capable_quotient(g: &FGAbelianGroup, row: &ClassRow) -> Result<FGAbelianGroup> {
    Ok(epicenter(g, row)?.quotient.clone())
}
