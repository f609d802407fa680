//! Line-based poset text format.
//!
//! One directive per line; `#` starts a comment and blank lines are
//! ignored. A point line is
//!
//! ```text
//! p <id> [<pred-id> ...]
//! ```
//!
//! listing predecessors of the point (immediate or not — the transitive
//! closure is recomputed on parse). Ids are non-negative integers and every
//! predecessor must appear on an earlier line.
//!
//! Serialization is canonical: points in insertion order, each with its
//! immediate predecessors in ascending order. Hence parsing a serialized
//! poset reproduces it exactly, and serializing a parsed canonical file
//! reproduces the file byte for byte.

use thiserror::Error;

use crate::{PointId, Poset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: negative id {id} is not allowed in the text format")]
    NegativeId { line: usize, id: i64 },
    #[error("line {line}: {source}")]
    Poset { line: usize, source: PosetError },
    #[error("negative id {0} cannot be serialized")]
    UnserializableId(PointId),
}

pub fn parse_poset(input: &str) -> Result<Poset, TextError> {
    let mut poset = Poset::new();
    for (line, raw) in input.lines().enumerate() {
        let line = line + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("p") => {
                let id = parse_id(tokens.next(), line, "point id")?;
                let mut preds = std::collections::BTreeSet::new();
                for tok in tokens {
                    preds.insert(parse_id(Some(tok), line, "predecessor id")?);
                }
                poset
                    .add_point(id, &preds)
                    .map_err(|source| TextError::Poset { line, source })?;
            }
            Some(other) => {
                return Err(TextError::Malformed {
                    line,
                    msg: format!("unknown directive `{other}`"),
                })
            }
            None => unreachable!("non-empty content has a first token"),
        }
    }
    Ok(poset)
}

fn parse_id(token: Option<&str>, line: usize, what: &str) -> Result<PointId, TextError> {
    let token = token.ok_or_else(|| TextError::Malformed {
        line,
        msg: format!("missing {what}"),
    })?;
    let raw: i64 = token.parse().map_err(|_| TextError::Malformed {
        line,
        msg: format!("invalid {what} `{token}`"),
    })?;
    if raw < 0 {
        return Err(TextError::NegativeId { line, id: raw });
    }
    Ok(PointId(raw))
}

pub fn serialize_poset(poset: &Poset) -> Result<String, TextError> {
    let mut out = String::new();
    for &id in poset.insertion_order() {
        if id.0 < 0 {
            return Err(TextError::UnserializableId(id));
        }
        out.push_str(&format!("p {id}"));
        for pred in poset.covers(id) {
            out.push_str(&format!(" {pred}"));
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn round_trips_canonically() {
        let mut poset = Poset::new();
        poset.add_point(PointId(0), &BTreeSet::new()).unwrap();
        poset.add_point(PointId(2), &BTreeSet::new()).unwrap();
        poset
            .add_point(PointId(1), &[PointId(0), PointId(2)].into_iter().collect())
            .unwrap();
        poset
            .add_point(PointId(7), &[PointId(1)].into_iter().collect())
            .unwrap();
        let text = serialize_poset(&poset).unwrap();
        assert_eq!(text, "p 0\np 2\np 1 0 2\np 7 1\n");
        let parsed = parse_poset(&text).unwrap();
        assert_eq!(parsed, poset);
        assert_eq!(serialize_poset(&parsed).unwrap(), text);
    }

    #[test]
    fn accepts_comments_and_redundant_predecessors() {
        let text = "# a diamond\np 0\np 1 0\n\np 2 0\np 3 1 2 0 # 0 is redundant\n";
        let poset = parse_poset(text).unwrap();
        assert!(poset.lt(PointId(0), PointId(3)));
        assert_eq!(
            poset.covers(PointId(3)),
            [PointId(1), PointId(2)].into_iter().collect()
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_poset("p -3"),
            Err(TextError::NegativeId { line: 1, id: -3 })
        ));
        assert!(matches!(
            parse_poset("q 0"),
            Err(TextError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_poset("p 0\np 0"),
            Err(TextError::Poset { line: 2, .. })
        ));
        assert!(matches!(
            parse_poset("p 0 5"),
            Err(TextError::Poset { line: 1, .. })
        ));
    }
}
