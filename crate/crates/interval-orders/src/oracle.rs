//! Brute-force 2+2 search, used only to cross-check the down-set-based
//! recognizer in tests.

use poset_core::Poset;

use crate::recognize::TwoPlusTwoWitness;

/// Guard against accidentally running the O(n⁴) scan on large posets.
pub const MAX_ORACLE_POINTS: usize = 60;

/// Scans all ordered 4-tuples for a 2+2 configuration; returns the first in
/// lexicographic `(a, b, c, d)` id order.
pub fn two_plus_two_brute(poset: &Poset) -> Option<TwoPlusTwoWitness> {
    assert!(poset.len() <= MAX_ORACLE_POINTS, "oracle poset too large");
    let points: Vec<_> = poset.points().collect();
    for &a in &points {
        for &b in &points {
            if !poset.lt(a, b) {
                continue;
            }
            for &c in &points {
                if c == a || c == b {
                    continue;
                }
                for &d in &points {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    if poset.lt(c, d) && poset.incomparable(a, d) && poset.incomparable(c, b) {
                        return Some(TwoPlusTwoWitness { a, b, c, d });
                    }
                }
            }
        }
    }
    None
}

/// Whether the poset is 2+2-free, by exhaustive search.
pub fn is_interval_order_brute(poset: &Poset) -> bool {
    two_plus_two_brute(poset).is_none()
}
