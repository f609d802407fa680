use std::collections::BTreeSet;
use std::fmt;

use poset_core::{PointId, Poset};
use thiserror::Error;

use crate::arrival::Arrival;

/// A finished game record: one `(arrival, chain)` pair per round, in play
/// order. Chain indices are 1-based and dense in order of first use.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainTranscript {
    rounds: Vec<(Arrival, usize)>,
}

impl ChainTranscript {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends one completed round. The referee guarantees validity;
    /// hand-built transcripts are validated by [`check_transcript`].
    pub fn push_round(&mut self, arrival: Arrival, chain: usize) {
        self.rounds.push((arrival, chain));
    }

    pub fn rounds(&self) -> impl Iterator<Item = (&Arrival, usize)> + '_ {
        self.rounds.iter().map(|(a, c)| (a, *c))
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// Chain assigned to `id`, if the point appears in the transcript.
    pub fn chain_of(&self, id: PointId) -> Option<usize> {
        self.rounds
            .iter()
            .find(|(a, _)| a.id == id)
            .map(|&(_, c)| c)
    }

    /// Number of distinct chains used.
    pub fn chain_count(&self) -> usize {
        self.rounds
            .iter()
            .map(|&(_, c)| c)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// The chains in index order: `chains()[k]` is chain `k + 1` in arrival
    /// order (so each inner vector is a chain from bottom to top).
    pub fn chains(&self) -> Vec<Vec<PointId>> {
        let count = self.rounds.iter().map(|&(_, c)| c).max().unwrap_or(0);
        let mut chains = vec![Vec::new(); count];
        for (a, c) in self.rounds() {
            chains[c - 1].push(a.id);
        }
        chains
    }

    /// Rebuilds the presented poset. Panics on an inconsistent transcript;
    /// use [`check_transcript`] for validation with diagnostics.
    pub fn poset(&self) -> Poset {
        let mut poset = Poset::new();
        for (a, _) in self.rounds() {
            poset
                .add_point(a.id, &a.down_set)
                .expect("transcript arrivals form a poset");
        }
        poset
    }
}

/// Summary of a validated transcript.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranscriptReport {
    pub points: usize,
    pub width: usize,
    pub chains: usize,
}

impl fmt::Display for TranscriptReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chains={} width={} points={}",
            self.chains, self.width, self.points
        )
    }
}

/// First rule violation found while re-validating a transcript.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("round {round} (point {id}): {message}")]
pub struct TranscriptViolation {
    /// 1-based round index.
    pub round: usize,
    pub id: PointId,
    pub message: String,
}

/// Recomputes the poset from scratch, re-validates every arrival and chain
/// assignment, and reports the final width and chain count.
pub fn check_transcript(t: &ChainTranscript) -> Result<TranscriptReport, TranscriptViolation> {
    let mut poset = Poset::new();
    let mut chains: Vec<Vec<PointId>> = Vec::new();
    for (round, (arrival, chain)) in t.rounds().enumerate() {
        let round = round + 1;
        let fail = |message: String| TranscriptViolation {
            round,
            id: arrival.id,
            message,
        };
        let closure = closed_down_set(&poset, &arrival.down_set)
            .map_err(|p| fail(format!("unknown predecessor {p}")))?;
        if closure != arrival.down_set {
            return Err(fail("down-set is not transitively closed".into()));
        }
        poset
            .add_point(arrival.id, &arrival.down_set)
            .map_err(|e| fail(e.to_string()))?;
        if chain == 0 {
            return Err(fail("chain indices are 1-based".into()));
        }
        if chain > chains.len() + 1 {
            return Err(fail(format!(
                "chain {chain} used before chain {}: indices must be dense in order of first use",
                chains.len() + 1
            )));
        }
        if chain == chains.len() + 1 {
            chains.push(Vec::new());
        }
        if let Some(&member) = chains[chain - 1]
            .iter()
            .find(|&&m| !poset.lt(m, arrival.id))
        {
            return Err(fail(format!(
                "point is not above chain member {member}: chain {chain} would stop being a chain"
            )));
        }
        chains[chain - 1].push(arrival.id);
    }
    Ok(TranscriptReport {
        points: poset.len(),
        width: poset.width(),
        chains: chains.len(),
    })
}

/// Transitive closure of `preds` in `poset`; `Err(p)` on an unknown point.
pub(crate) fn closed_down_set(
    poset: &Poset,
    preds: &BTreeSet<PointId>,
) -> Result<BTreeSet<PointId>, PointId> {
    let mut closed = BTreeSet::new();
    for &p in preds {
        if !poset.contains(p) {
            return Err(p);
        }
        closed.insert(p);
        closed.extend(poset.down_set(p));
    }
    Ok(closed)
}

/// Errors for the `p`/`c` transcript file format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: negative id {id} cannot appear in transcript files")]
    NegativeId { line: usize, id: i64 },
    #[error("line {line}: arrival of {id} is not followed by its chain assignment")]
    MissingAssignment { line: usize, id: PointId },
    #[error("line {line}: {msg}")]
    Inconsistent { line: usize, msg: String },
    #[error("point {0} has a negative id and cannot be serialized")]
    UnserializableId(PointId),
}

fn malformed(line: usize, msg: impl Into<String>) -> TextError {
    TextError::Malformed {
        line,
        msg: msg.into(),
    }
}

fn parse_id(token: &str, line: usize) -> Result<PointId, TextError> {
    let id: i64 = token
        .parse()
        .map_err(|e| malformed(line, format!("bad id {token:?}: {e}")))?;
    if id < 0 {
        return Err(TextError::NegativeId { line, id });
    }
    Ok(PointId(id))
}

/// Parses the interleaved transcript format:
///
/// ```text
/// p <id> [<preds…>]
/// c <id> <chain>
/// ```
///
/// Each `p` line presents a point above the listed predecessors (any
/// generating set; the closure is recomputed), and must be immediately
/// followed by the matching `c` line. `#` starts a comment; blank lines are
/// skipped; ids are non-negative; chains are 1-based.
pub fn parse_transcript(input: &str) -> Result<ChainTranscript, TextError> {
    let mut transcript = ChainTranscript::new();
    let mut poset = Poset::new();
    // Pending arrival from a `p` line awaiting its `c` line.
    let mut pending: Option<(usize, PointId)> = None;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let tag = tokens.next().expect("non-empty content");
        match tag {
            "p" => {
                if let Some((pline, pid)) = pending {
                    return Err(TextError::MissingAssignment {
                        line: pline,
                        id: pid,
                    });
                }
                let id = parse_id(tokens.next().ok_or_else(|| malformed(line, "missing id"))?, line)?;
                let mut preds = BTreeSet::new();
                for tok in tokens {
                    preds.insert(parse_id(tok, line)?);
                }
                poset.add_point(id, &preds).map_err(|e| TextError::Inconsistent {
                    line,
                    msg: e.to_string(),
                })?;
                pending = Some((line, id));
            }
            "c" => {
                let (_, pid) = pending.take().ok_or_else(|| {
                    malformed(line, "chain assignment without a preceding arrival")
                })?;
                let id = parse_id(tokens.next().ok_or_else(|| malformed(line, "missing id"))?, line)?;
                if id != pid {
                    return Err(TextError::Inconsistent {
                        line,
                        msg: format!("assignment for {id} but the pending arrival is {pid}"),
                    });
                }
                let chain: usize = tokens
                    .next()
                    .ok_or_else(|| malformed(line, "missing chain index"))?
                    .parse()
                    .map_err(|e| malformed(line, format!("bad chain index: {e}")))?;
                if chain == 0 {
                    return Err(malformed(line, "chain indices are 1-based"));
                }
                if let Some(extra) = tokens.next() {
                    return Err(malformed(line, format!("unexpected token {extra:?}")));
                }
                transcript.push_round(Arrival::new(id, poset.down_set(id)), chain);
            }
            other => return Err(malformed(line, format!("expected 'p' or 'c', got {other:?}"))),
        }
    }
    if let Some((pline, pid)) = pending {
        return Err(TextError::MissingAssignment {
            line: pline,
            id: pid,
        });
    }
    Ok(transcript)
}

/// Serializes a transcript canonically: each `p` line lists the point's
/// covers (immediate predecessors) ascending, so parse ∘ serialize is the
/// identity and serialized output is a fixed point.
pub fn serialize_transcript(t: &ChainTranscript) -> Result<String, TextError> {
    let mut poset = Poset::new();
    let mut out = String::new();
    for (arrival, chain) in t.rounds() {
        if arrival.id.0 < 0 {
            return Err(TextError::UnserializableId(arrival.id));
        }
        if let Some(&neg) = arrival.down_set.iter().find(|p| p.0 < 0) {
            return Err(TextError::UnserializableId(neg));
        }
        poset
            .add_point(arrival.id, &arrival.down_set)
            .expect("serializable transcripts form a poset");
        out.push_str(&format!("p {}", arrival.id.0));
        for cover in poset.covers(arrival.id) {
            out.push_str(&format!(" {}", cover.0));
        }
        out.push('\n');
        out.push_str(&format!("c {} {chain}\n", arrival.id.0));
    }
    Ok(out)
}

/// Reconstructs the arrival sequence of a poset file (`p` lines only, as
/// written by `parse_poset`/`serialize_poset`), in insertion order.
pub fn arrivals_of_poset(poset: &Poset) -> Vec<Arrival> {
    poset
        .insertion_order()
        .iter()
        .map(|&id| Arrival::new(id, poset.down_set(id)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let text = "p 0\nc 0 1\np 2 0\nc 2 1\np 1\nc 1 2\n";
        let t = parse_transcript(text).unwrap();
        assert_eq!(serialize_transcript(&t).unwrap(), text);
        assert_eq!(t.chain_count(), 2);
        assert_eq!(t.chains(), vec![vec![PointId(0), PointId(2)], vec![PointId(1)]]);
        let report = check_transcript(&t).unwrap();
        assert_eq!(report.to_string(), "chains=2 width=2 points=3");
    }

    #[test]
    fn parse_recomputes_closures_and_serializes_covers() {
        // 0 < 1 < 2 presented with a redundant predecessor list for 2.
        let t = parse_transcript("p 0\nc 0 1\np 1 0\nc 1 1\np 2 0 1\nc 2 1\n").unwrap();
        let last = t.rounds().last().unwrap().0.clone();
        assert_eq!(last.down_set, [PointId(0), PointId(1)].into());
        assert_eq!(
            serialize_transcript(&t).unwrap(),
            "p 0\nc 0 1\np 1 0\nc 1 1\np 2 1\nc 2 1\n"
        );
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matches!(
            parse_transcript("p 0\np 1\n"),
            Err(TextError::MissingAssignment { line: 1, .. })
        ));
        assert!(matches!(
            parse_transcript("c 0 1\n"),
            Err(TextError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_transcript("p 0\nc 3 1\n"),
            Err(TextError::Inconsistent { line: 2, .. })
        ));
        assert!(matches!(
            parse_transcript("p 0\nc 0 0\n"),
            Err(TextError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_transcript("p -4\nc -4 1\n"),
            Err(TextError::NegativeId { line: 1, id: -4 })
        ));
        assert!(matches!(
            parse_transcript("p 1 5\nc 1 1\n"),
            Err(TextError::Inconsistent { line: 1, .. })
        ));
    }

    #[test]
    fn check_rejects_bad_transcripts() {
        // Two incomparable points on one chain.
        let mut t = ChainTranscript::new();
        t.push_round(Arrival::new(PointId(0), []), 1);
        t.push_round(Arrival::new(PointId(1), []), 1);
        let violation = check_transcript(&t).unwrap_err();
        assert_eq!(violation.round, 2);
        assert_eq!(violation.id, PointId(1));
        assert!(violation.message.contains("not above chain member"));

        // Non-dense chain numbering.
        let mut t = ChainTranscript::new();
        t.push_round(Arrival::new(PointId(0), []), 2);
        assert!(check_transcript(&t).unwrap_err().message.contains("dense"));

        // Down-set not transitively closed.
        let mut t = ChainTranscript::new();
        t.push_round(Arrival::new(PointId(0), []), 1);
        t.push_round(Arrival::new(PointId(1), [PointId(0)]), 1);
        t.push_round(Arrival::new(PointId(2), [PointId(1)]), 1);
        assert!(check_transcript(&t)
            .unwrap_err()
            .message
            .contains("transitively closed"));
    }
}
