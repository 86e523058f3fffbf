//! JSON rendering with a stable schema.
//!
//! All potentially unbounded integers (moduli, residues, multiplicities,
//! orders, factor exponents) are emitted as decimal strings so the output
//! is exact for any input size; rank and variety entries are plain JSON
//! numbers. Object keys serialize in sorted order, which keeps files
//! byte-stable across runs.

use polynil::{
    CapabilityVerdict, ClassRow, EpicenterResult, FGAbelianGroup, GroupElement, MultiplierOrder,
    MultiplierStructure,
};
use serde_json::{json, Value};

pub fn group_json(g: &FGAbelianGroup) -> Value {
    json!({
        "rank": g.rank(),
        "torsion": g.torsion().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "display": g.to_string(),
    })
}

pub fn variety_json(row: &ClassRow) -> Value {
    json!(row.classes())
}

pub fn element_json(e: &GroupElement) -> Value {
    json!({
        "free": e.free_part().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "torsion": e.torsion_part().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

pub fn multiplier_json(m: &MultiplierStructure) -> Value {
    json!({
        "free_rank": m.free_rank().to_string(),
        "layers": m
            .layers()
            .iter()
            .map(|(modulus, mult)| json!([modulus.to_string(), mult.to_string()]))
            .collect::<Vec<_>>(),
        "display": m.to_string(),
    })
}

pub fn order_json(order: &MultiplierOrder) -> Value {
    match order.finite() {
        Some(factored) => json!({
            "finite": true,
            "factors": factored
                .factors()
                .map(|(p, e)| json!([p.to_string(), e.to_string()]))
                .collect::<Vec<_>>(),
        }),
        None => json!({ "finite": false, "factors": Value::Null }),
    }
}

pub fn verdict_json(v: &CapabilityVerdict) -> Value {
    json!({
        "capable": v.is_capable(),
        "rule": v.rule().tag(),
        "witness": v.witness().map(element_json).unwrap_or(Value::Null),
    })
}

pub fn epicenter_json(e: &EpicenterResult) -> Value {
    json!({
        "size": e.members().len(),
        "members": e.members().iter().map(element_json).collect::<Vec<_>>(),
        "structure": group_json(e.structure()),
        "quotient": group_json(e.quotient()),
        "trivial": e.is_trivial(),
    })
}
