//! Census pipeline: every finite abelian group up to an order bound,
//! crossed with a set of class rows, each record carrying the multiplier
//! and both capability verdicts. Records are computed in parallel but
//! written in a fixed order (by order, then canonical form, then row), so
//! two runs with the same arguments produce byte-identical files.

use crate::output::{group_json, multiplier_json, order_json, variety_json, verdict_json};
use polynil::{
    enumerate_abelian_groups, is_capable_closed_form, is_capable_oracle, polynilpotent_multiplier,
    CapabilityVerdict, ClassRow, FGAbelianGroup,
};
use rayon::prelude::*;
use serde_json::{json, Value};

pub struct CensusRecord {
    pub group: FGAbelianGroup,
    pub row: ClassRow,
    pub closed: CapabilityVerdict,
    pub oracle: CapabilityVerdict,
    pub line: String,
}

impl CensusRecord {
    pub fn agree(&self) -> bool {
        self.closed.is_capable() == self.oracle.is_capable()
    }
}

pub struct CensusSummary {
    pub records: Vec<CensusRecord>,
    pub group_count: usize,
}

/// Runs the census over all `(group, row)` pairs. Rows are sorted and
/// deduplicated; groups stream in census order.
pub fn run_census(order_bound: u64, rows: &[ClassRow]) -> CensusSummary {
    let mut rows: Vec<ClassRow> = rows.to_vec();
    rows.sort();
    rows.dedup();

    let groups: Vec<FGAbelianGroup> = enumerate_abelian_groups(order_bound).collect();
    let pairs: Vec<(&FGAbelianGroup, &ClassRow)> =
        groups.iter().flat_map(|g| rows.iter().map(move |r| (g, r))).collect();

    let records: Vec<CensusRecord> =
        pairs.par_iter().map(|(group, row)| build_record(group, row)).collect();

    CensusSummary { records, group_count: groups.len() }
}

fn build_record(group: &FGAbelianGroup, row: &ClassRow) -> CensusRecord {
    let multiplier = polynilpotent_multiplier(group, row);
    let closed = is_capable_closed_form(group, row);
    let oracle = is_capable_oracle(group, row).expect("census groups are finite");
    let value: Value = json!({
        "group": group_json(group),
        "order": group.order().to_string(),
        "variety": variety_json(row),
        "multiplier": multiplier_json(&multiplier),
        "multiplier_order": order_json(&multiplier.order()),
        "closed_form": verdict_json(&closed),
        "oracle": verdict_json(&oracle),
        "agree": closed.is_capable() == oracle.is_capable(),
    });
    CensusRecord { group: group.clone(), row: row.clone(), closed, oracle, line: value.to_string() }
}

impl CensusSummary {
    /// JSON Lines body: one record per line, LF endings.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for record in &self.records {
            out.push_str(&record.line);
            out.push('\n');
        }
        out
    }

    pub fn disagreements(&self) -> Vec<&CensusRecord> {
        self.records.iter().filter(|r| !r.agree()).collect()
    }

    /// Count of capable groups per row, in record order.
    pub fn capable_counts(&self) -> Vec<(ClassRow, usize)> {
        let mut counts: Vec<(ClassRow, usize)> = Vec::new();
        for record in &self.records {
            match counts.iter_mut().find(|(row, _)| *row == record.row) {
                Some((_, n)) => {
                    if record.closed.is_capable() {
                        *n += 1;
                    }
                }
                None => counts.push((record.row.clone(), usize::from(record.closed.is_capable()))),
            }
        }
        counts
    }
}
