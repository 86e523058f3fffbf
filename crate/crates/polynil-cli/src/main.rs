//! Command-line front end: single-query commands plus a census pipeline
//! that cross-checks the closed-form classification against the
//! brute-force oracle and persists machine-readable records.
//!
//! Exit codes: 0 success, 1 internal/I-O error, 2 usage or parse error,
//! 3 unsupported operation (oracle-style queries on infinite groups),
//! 4 oracle vs closed-form disagreement.

mod census;
mod output;
mod spec;

use clap::{Parser, Subcommand};
use output::{epicenter_json, group_json, multiplier_json, order_json, variety_json, verdict_json};
use polynil::{
    epicenter, is_capable_closed_form, is_capable_oracle, polynilpotent_multiplier, ClassRow,
    Error as LibError, FGAbelianGroup,
};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "polynil",
    version,
    about = "Polynilpotent multipliers and capability of finitely generated abelian groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a group spec into invariant-factor form
    Canonicalize {
        /// Group spec, e.g. "Z^2 + Z12 + Z6 + Z2" or "1"
        spec: String,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Compute the multiplier of a group for a class row
    Multiplier {
        spec: String,
        /// Class row c1,c2,...,ct (comma-separated, each >= 1)
        #[arg(long, value_parser = parse_variety)]
        variety: ClassRow,
        #[arg(long)]
        json: bool,
    },
    /// Decide capability for a class row
    Capable {
        spec: String,
        #[arg(long, value_parser = parse_variety)]
        variety: ClassRow,
        /// Also run the brute-force oracle and fail on disagreement
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compute the epicenter and largest capable quotient (finite groups)
    Epicenter {
        spec: String,
        #[arg(long, value_parser = parse_variety)]
        variety: ClassRow,
        #[arg(long)]
        json: bool,
    },
    /// Verify the classification over all groups up to an order bound
    Census {
        /// Largest group order to include (>= 1)
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        order_bound: u64,
        /// Class row; repeat the flag for several rows
        #[arg(long = "variety", value_parser = parse_variety, required = true)]
        varieties: Vec<ClassRow>,
        /// Output path for the JSON Lines census file
        output: PathBuf,
        /// Emit the summary as JSON
        #[arg(long)]
        json: bool,
    },
}

fn parse_variety(s: &str) -> Result<ClassRow, String> {
    let classes: Result<Vec<u32>, _> =
        s.split(',').map(|part| part.trim().parse::<u32>()).collect();
    let classes = classes
        .map_err(|_| format!("invalid class row `{s}`: expected comma-separated integers"))?;
    ClassRow::new(classes).map_err(|e| e.to_string())
}

enum CliError {
    Parse(String),
    Unsupported(String),
    Disagreement(String),
    Io { path: PathBuf, source: std::io::Error },
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Disagreement(_) => 4,
            CliError::Io { .. } | CliError::Internal(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(m)
            | CliError::Unsupported(m)
            | CliError::Disagreement(m)
            | CliError::Internal(m) => m.clone(),
            CliError::Io { path, source } => format!("{}: {source}", path.display()),
        }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        match e {
            LibError::InfiniteGroup { .. } | LibError::InfiniteSubgroupClosure => {
                CliError::Unsupported(e.to_string())
            }
            LibError::NonPositiveModulus
            | LibError::NotCanonical(_)
            | LibError::ShapeMismatch { .. }
            | LibError::InvalidClassRow
            | LibError::NonPositiveArgument(_) => CliError::Parse(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn parse_group(text: &str) -> Result<FGAbelianGroup, CliError> {
    let (rank, moduli) =
        spec::parse_group_spec(text).map_err(|e| CliError::Parse(format!("spec `{text}` {e}")))?;
    Ok(FGAbelianGroup::canonicalize(rank, &moduli)?)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Canonicalize { spec, json } => {
            let group = parse_group(&spec)?;
            if json {
                println!(
                    "{}",
                    json!({ "group": group_json(&group), "order": group.order().to_string() })
                );
            } else {
                println!("{group}");
                println!("order: {}", group.order());
            }
            Ok(())
        }
        Command::Multiplier { spec, variety, json } => {
            let group = parse_group(&spec)?;
            let multiplier = polynilpotent_multiplier(&group, &variety);
            if json {
                println!(
                    "{}",
                    json!({
                        "group": group_json(&group),
                        "variety": variety_json(&variety),
                        "multiplier": multiplier_json(&multiplier),
                        "order": order_json(&multiplier.order()),
                    })
                );
            } else {
                println!("{multiplier}");
                println!("order: {}", multiplier.order());
            }
            Ok(())
        }
        Command::Capable { spec, variety, oracle, json } => {
            let group = parse_group(&spec)?;
            let closed = is_capable_closed_form(&group, &variety);
            let oracle_verdict =
                if oracle { Some(is_capable_oracle(&group, &variety)?) } else { None };

            if json {
                println!(
                    "{}",
                    json!({
                        "group": group_json(&group),
                        "variety": variety_json(&variety),
                        "closed_form": verdict_json(&closed),
                        "oracle": oracle_verdict.as_ref().map(verdict_json),
                        "agree": oracle_verdict
                            .as_ref()
                            .map(|o| o.is_capable() == closed.is_capable()),
                    })
                );
            } else {
                let adjective = if closed.is_capable() { "capable" } else { "not capable" };
                println!("{adjective} ({})", closed.rule().describe());
                if let Some(o) = &oracle_verdict {
                    match o.witness() {
                        Some(w) => println!("oracle: not capable, witness {w}"),
                        None => println!("oracle: capable"),
                    }
                }
            }

            if let Some(o) = &oracle_verdict {
                if o.is_capable() != closed.is_capable() {
                    return Err(CliError::Disagreement(format!(
                        "disagreement: capable \"{group}\" --variety {} (closed form {}, oracle {})",
                        variety_flag(&variety),
                        closed.is_capable(),
                        o.is_capable()
                    )));
                }
            }
            Ok(())
        }
        Command::Epicenter { spec, variety, json } => {
            let group = parse_group(&spec)?;
            let result = epicenter(&group, &variety)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "group": group_json(&group),
                        "variety": variety_json(&variety),
                        "epicenter": epicenter_json(&result),
                    })
                );
            } else {
                println!("epicenter: {} ({} elements)", result.structure(), result.members().len());
                println!("largest capable quotient: {}", result.quotient());
            }
            Ok(())
        }
        Command::Census { order_bound, varieties, output, json } => {
            configure_threads()?;
            let summary = census::run_census(order_bound, &varieties);
            std::fs::write(&output, summary.to_jsonl())
                .map_err(|source| CliError::Io { path: output.clone(), source })?;

            if json {
                println!(
                    "{}",
                    json!({
                        "order_bound": order_bound,
                        "groups": summary.group_count,
                        "records": summary.records.len(),
                        "output": output.display().to_string(),
                        "capable": summary
                            .capable_counts()
                            .iter()
                            .map(|(row, n)| json!({ "variety": variety_json(row), "capable": n }))
                            .collect::<Vec<_>>(),
                        "disagreements": summary.disagreements().len(),
                    })
                );
            } else {
                println!(
                    "census: {} groups of order <= {order_bound}, {} records -> {}",
                    summary.group_count,
                    summary.records.len(),
                    output.display()
                );
                for (row, capable) in summary.capable_counts() {
                    println!("variety {row}: {capable} of {} capable", summary.group_count);
                }
                println!("disagreements: {}", summary.disagreements().len());
            }

            if let Some(bad) = summary.disagreements().first() {
                return Err(CliError::Disagreement(format!(
                    "disagreement: capable \"{}\" --variety {} (closed form {}, oracle {})",
                    bad.group,
                    variety_flag(&bad.row),
                    bad.closed.is_capable(),
                    bad.oracle.is_capable()
                )));
            }
            Ok(())
        }
    }
}

fn variety_flag(row: &ClassRow) -> String {
    row.classes().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Honors POLYNIL_THREADS as a cap on census parallelism.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("POLYNIL_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Parse(format!("invalid POLYNIL_THREADS `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}
