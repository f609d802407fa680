use std::collections::BTreeSet;
use std::fmt;

use poset_core::{PointId, Poset};

/// Four points forming a 2+2: two disjoint 2-chains `a < b` and `c < d`
/// with `a ∥ d` and `c ∥ b` (which forces `a ∥ c` and `b ∥ d` as well).
/// Any poset containing such a configuration has no interval representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoPlusTwoWitness {
    pub a: PointId,
    pub b: PointId,
    pub c: PointId,
    pub d: PointId,
}

impl TwoPlusTwoWitness {
    /// Checks the defining conditions against a poset.
    pub fn holds_in(&self, poset: &Poset) -> bool {
        let Self { a, b, c, d } = *self;
        let distinct = [a, b, c, d]
            .iter()
            .collect::<BTreeSet<_>>()
            .len()
            == 4;
        distinct
            && poset.lt(a, b)
            && poset.lt(c, d)
            && poset.incomparable(a, d)
            && poset.incomparable(c, b)
    }
}

impl fmt::Display for TwoPlusTwoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} < {}, {} < {}, {} || {}, {} || {})",
            self.a, self.b, self.c, self.d, self.a, self.d, self.c, self.b
        )
    }
}

/// Searches for a 2+2 configuration via Fishburn's criterion: the poset is an
/// interval order iff the open down-sets are linearly ordered by inclusion.
///
/// Deterministic output: scans pairs `(b, d)` in ascending id order for the
/// first pair whose down-sets are inclusion-incomparable, then picks the
/// largest-id witnesses `a` below `b` only and `c` below `d` only.
pub fn two_plus_two(poset: &Poset) -> Option<TwoPlusTwoWitness> {
    let points: Vec<PointId> = poset.points().collect();
    let downs: Vec<BTreeSet<PointId>> = points.iter().map(|&p| poset.down_set(p)).collect();
    for (bi, &b) in points.iter().enumerate() {
        for (di, &d) in points.iter().enumerate() {
            if bi == di {
                continue;
            }
            // difference() iterates ascending, so last() is the largest id.
            let a = downs[bi].difference(&downs[di]).last();
            let c = downs[di].difference(&downs[bi]).last();
            if let (Some(&a), Some(&c)) = (a, c) {
                let witness = TwoPlusTwoWitness { a, b, c, d };
                debug_assert!(witness.holds_in(poset));
                return Some(witness);
            }
        }
    }
    None
}

/// Whether the poset is an interval order (2+2-free).
pub fn is_interval_order(poset: &Poset) -> bool {
    two_plus_two(poset).is_none()
}
