//! Brute-force reference implementations.
//!
//! Everything in this module recomputes its answer from first principles —
//! antichain enumeration, perfect-matching enumeration, isomorphism by
//! permutation search — so that the fast implementations elsewhere in the
//! workspace can be validated against an independent ground truth. Inputs
//! are expected to be tiny (roughly n ≤ 16 points, widths ≤ 4); the
//! functions assert on sizes that would make enumeration explode.

use std::collections::BTreeSet;

use crate::bipartite::{CoreTag, RegularBipartite};
use crate::{CoreError, PointId, Poset};

const MAX_ORACLE_POINTS: usize = 22;

/// Every antichain of the poset, the empty one included.
pub fn all_antichains(poset: &Poset) -> Vec<BTreeSet<PointId>> {
    assert!(
        poset.len() <= MAX_ORACLE_POINTS,
        "oracle enumeration is exponential; got {} points",
        poset.len()
    );
    let mut out = vec![BTreeSet::new()];
    for p in poset.points() {
        let mut extended = Vec::new();
        for a in &out {
            if a.iter().all(|&q| poset.incomparable(p, q)) {
                let mut bigger = a.clone();
                bigger.insert(p);
                extended.push(bigger);
            }
        }
        out.extend(extended);
    }
    out
}

pub fn width_brute(poset: &Poset) -> usize {
    all_antichains(poset)
        .iter()
        .map(|a| a.len())
        .max()
        .unwrap_or(0)
}

/// All maximum antichains, sorted lexicographically.
pub fn maximum_antichains(poset: &Poset) -> Vec<BTreeSet<PointId>> {
    let all = all_antichains(poset);
    let w = all.iter().map(|a| a.len()).max().unwrap_or(0);
    let mut out: Vec<_> = all.into_iter().filter(|a| a.len() == w).collect();
    out.sort();
    out
}

/// The lattice order on maximum antichains.
pub fn ma_le_brute(poset: &Poset, a: &BTreeSet<PointId>, b: &BTreeSet<PointId>) -> bool {
    a.iter().all(|&p| b.iter().any(|&q| poset.le(p, q)))
}

/// Least upper bound of `a` and `b` among all maximum antichains.
pub fn ma_join_brute(
    poset: &Poset,
    a: &BTreeSet<PointId>,
    b: &BTreeSet<PointId>,
) -> BTreeSet<PointId> {
    let mas = maximum_antichains(poset);
    let ubs: Vec<_> = mas
        .iter()
        .filter(|c| ma_le_brute(poset, a, c) && ma_le_brute(poset, b, c))
        .collect();
    let least: Vec<_> = ubs
        .iter()
        .filter(|c| ubs.iter().all(|d| ma_le_brute(poset, c, d)))
        .collect();
    assert_eq!(least.len(), 1, "the maximum antichains must form a lattice");
    (*least[0]).clone()
}

/// Greatest lower bound of `a` and `b` among all maximum antichains.
pub fn ma_meet_brute(
    poset: &Poset,
    a: &BTreeSet<PointId>,
    b: &BTreeSet<PointId>,
) -> BTreeSet<PointId> {
    let mas = maximum_antichains(poset);
    let lbs: Vec<_> = mas
        .iter()
        .filter(|c| ma_le_brute(poset, c, a) && ma_le_brute(poset, c, b))
        .collect();
    let greatest: Vec<_> = lbs
        .iter()
        .filter(|c| lbs.iter().all(|d| ma_le_brute(poset, d, c)))
        .collect();
    assert_eq!(
        greatest.len(),
        1,
        "the maximum antichains must form a lattice"
    );
    (*greatest[0]).clone()
}

/// Literal definition of a high antichain: within the closed up-set of `a`,
/// no antichain other than `a` reaches the size of `a`.
pub fn is_high_brute(poset: &Poset, a: &BTreeSet<PointId>) -> bool {
    if a.is_empty() {
        return false;
    }
    let Ok(antichain) = poset.antichain(a.iter().copied()) else {
        return false;
    };
    let up = poset.up_closure(&antichain);
    let sub = poset.restriction(&up);
    all_antichains(&sub)
        .iter()
        .all(|b| b == a || b.len() < a.len())
}

/// The unique high antichain of maximum size.
pub fn hma_brute(poset: &Poset) -> BTreeSet<PointId> {
    let highs: Vec<_> = maximum_antichains(poset)
        .into_iter()
        .filter(|a| is_high_brute(poset, a))
        .collect();
    assert_eq!(
        highs.len(),
        1,
        "exactly one maximum antichain must be high"
    );
    highs.into_iter().next().unwrap()
}

/// Every perfect matching, as a vector mapping lower index → upper index.
pub fn perfect_matchings(rb: &RegularBipartite) -> Vec<Vec<usize>> {
    let w = rb.width();
    let mut used = vec![false; w];
    let mut current = vec![0usize; w];
    let mut out = Vec::new();
    fn go(
        rb: &RegularBipartite,
        i: usize,
        used: &mut [bool],
        current: &mut [usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        let w = rb.width();
        if i == w {
            out.push(current.to_vec());
            return;
        }
        for j in 0..w {
            if !used[j] && rb.has_edge(rb.lower()[i], rb.upper()[j]) {
                used[j] = true;
                current[i] = j;
                go(rb, i + 1, used, current, out);
                used[j] = false;
            }
        }
    }
    go(rb, 0, &mut used, &mut current, &mut out);
    out
}

/// The union of all perfect matchings, by enumerating them.
pub fn core_brute(rb: &RegularBipartite) -> Result<RegularBipartite, CoreError> {
    let pms = perfect_matchings(rb);
    if pms.is_empty() {
        return Err(CoreError::NoPerfectMatching);
    }
    let mut edges = BTreeSet::new();
    for pm in pms {
        for (i, &j) in pm.iter().enumerate() {
            edges.insert((rb.lower()[i], rb.upper()[j]));
        }
    }
    RegularBipartite::new(
        rb.lower().iter().copied(),
        rb.upper().iter().copied(),
        edges,
    )
}

/// Isomorphism-based classification: tries every tag of the right width and
/// every pair of level relabelings.
pub fn classify_brute(rb: &RegularBipartite) -> Option<CoreTag> {
    let w = rb.width();
    for tag in CoreTag::ALL {
        if tag.width() != w {
            continue;
        }
        for low_perm in permutations(w) {
            for up_perm in permutations(w) {
                let mapped: BTreeSet<(PointId, PointId)> = tag
                    .canonical_edges()
                    .iter()
                    .map(|&(i, j)| (rb.lower()[low_perm[i]], rb.upper()[up_perm[j]]))
                    .collect();
                if &mapped == rb.edges() {
                    return Some(tag);
                }
            }
        }
    }
    None
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in permutations(n - 1) {
            for v in rest.iter_mut() {
                if *v >= first {
                    *v += 1;
                }
            }
            let mut p = vec![first];
            p.append(&mut rest);
            out.push(p);
        }
    }
    out
}
