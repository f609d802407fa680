//! Line-based text format for interval representations.
//!
//! One interval per line:
//!
//! ```text
//! i <id> <left> <right>
//! ```
//!
//! Endpoints are exact rationals written `numerator/denominator` (always
//! with an explicit denominator on output; plain integers are accepted on
//! input). `#` starts a comment, blank lines are skipped, ids must be
//! non-negative, and serialization lists points in ascending id order, so
//! parse ∘ serialize is the identity.

use std::str::FromStr;

use num_rational::BigRational;
use poset_core::PointId;
use thiserror::Error;

use crate::error::IntervalError;
use crate::rep::IntervalRep;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: negative id {id} cannot appear in interval files")]
    NegativeId { line: usize, id: i64 },
    #[error("line {line}: {source}")]
    Interval {
        line: usize,
        source: IntervalError,
    },
    #[error("point {0} has a negative id and cannot be serialized")]
    UnserializableId(PointId),
}

fn malformed(line: usize, msg: impl Into<String>) -> TextError {
    TextError::Malformed {
        line,
        msg: msg.into(),
    }
}

fn parse_rational(token: &str, line: usize) -> Result<BigRational, TextError> {
    BigRational::from_str(token)
        .map_err(|e| malformed(line, format!("bad rational {token:?}: {e}")))
}

/// Parses `i` lines into an interval representation.
pub fn parse_intervals(input: &str) -> Result<IntervalRep, TextError> {
    let mut rep = IntervalRep::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("i") => {}
            Some(other) => return Err(malformed(line, format!("expected 'i', got {other:?}"))),
            None => unreachable!("non-empty content has a first token"),
        }
        let id: i64 = tokens
            .next()
            .ok_or_else(|| malformed(line, "missing id"))?
            .parse()
            .map_err(|e| malformed(line, format!("bad id: {e}")))?;
        if id < 0 {
            return Err(TextError::NegativeId { line, id });
        }
        let left = parse_rational(tokens.next().ok_or_else(|| malformed(line, "missing left endpoint"))?, line)?;
        let right = parse_rational(tokens.next().ok_or_else(|| malformed(line, "missing right endpoint"))?, line)?;
        if let Some(extra) = tokens.next() {
            return Err(malformed(line, format!("unexpected token {extra:?}")));
        }
        rep.insert(PointId(id), left, right)
            .map_err(|source| TextError::Interval { line, source })?;
    }
    Ok(rep)
}

/// Serializes a representation, one `i` line per point in ascending id order.
pub fn serialize_intervals(rep: &IntervalRep) -> Result<String, TextError> {
    let mut out = String::new();
    for (id, l, r) in rep.iter() {
        if id.0 < 0 {
            return Err(TextError::UnserializableId(id));
        }
        out.push_str(&format!(
            "i {} {}/{} {}/{}\n",
            id.0,
            l.numer(),
            l.denom(),
            r.numer(),
            r.denom()
        ));
    }
    Ok(out)
}
