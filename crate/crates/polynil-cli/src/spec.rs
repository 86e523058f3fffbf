//! Parsing of textual group specs like `Z^2 + Z12 + Z6 + Z2`.
//!
//! Grammar: terms joined by `+`, whitespace ignored. `Z^m` contributes
//! free rank `m`, a bare `Z` contributes rank 1, `Zn` (or `Z_n`)
//! contributes a torsion modulus `n >= 1`, and `1` alone denotes the
//! trivial group. The result is a pre-canonical `(rank, moduli)` pair;
//! moduli are not required to form a divisor chain.

use num_bigint::BigUint;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError { position, message: message.into() }
}

pub fn parse_group_spec(text: &str) -> Result<(usize, Vec<BigUint>), ParseError> {
    let mut rank = 0usize;
    let mut moduli: Vec<BigUint> = Vec::new();
    let mut term_count = 0usize;
    let mut trivial_at: Option<usize> = None;

    let mut offset = 0usize;
    for raw in text.split('+') {
        let skipped = raw.len() - raw.trim_start().len();
        let position = offset + skipped;
        offset += raw.len() + 1; // account for the consumed '+'

        let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if term.is_empty() {
            return Err(err(position, "empty term"));
        }
        term_count += 1;

        if term == "1" {
            trivial_at = Some(position);
            continue;
        }
        let Some(body) = term.strip_prefix('Z') else {
            return Err(err(position, format!("unrecognized term `{term}`")));
        };
        if body.is_empty() {
            rank += 1;
            continue;
        }
        if let Some(exp) = body.strip_prefix('^') {
            let m: usize =
                exp.parse().map_err(|_| err(position, format!("invalid rank `{exp}`")))?;
            rank += m;
            continue;
        }
        let digits = body.strip_prefix('_').unwrap_or(body);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(position, format!("invalid modulus `{digits}`")));
        }
        if digits.bytes().all(|b| b == b'0') {
            return Err(err(position, "modulus must be positive"));
        }
        let n: BigUint = digits.parse().expect("digit string");
        moduli.push(n);
    }

    if let Some(position) = trivial_at {
        if term_count > 1 {
            return Err(err(position, "`1` is only valid as the whole spec"));
        }
        return Ok((0, Vec::new()));
    }
    Ok((rank, moduli))
}
