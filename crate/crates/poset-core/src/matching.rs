//! Bipartite maximum matching over bitset adjacency rows.

use fixedbitset::FixedBitSet;

pub(crate) struct Matching {
    /// For a left vertex, the right vertex it is matched to.
    pub match_left: Vec<Option<usize>>,
    /// For a right vertex, the left vertex it is matched to.
    pub match_right: Vec<Option<usize>>,
    pub size: usize,
}

/// Maximum matching of the bipartite graph whose left (right) vertices are
/// the set bits of `left` (`right`) and where left `i` is adjacent to every
/// right `j` in `adj[i]` that is also in `right`.
///
/// Kuhn's augmenting-path algorithm with a greedy seed; vertices are scanned
/// in ascending index order, so the result is deterministic.
pub(crate) fn max_matching(
    adj: &[FixedBitSet],
    left: &FixedBitSet,
    right: &FixedBitSet,
) -> Matching {
    let n = adj.len();
    let mut m = Matching {
        match_left: vec![None; n],
        match_right: vec![None; n],
        size: 0,
    };
    for i in left.ones() {
        for j in adj[i].ones() {
            if right.contains(j) && m.match_right[j].is_none() {
                m.match_left[i] = Some(j);
                m.match_right[j] = Some(i);
                m.size += 1;
                break;
            }
        }
    }
    let mut visited = FixedBitSet::with_capacity(n);
    for i in left.ones() {
        if m.match_left[i].is_none() {
            visited.clear();
            if augment(adj, right, i, &mut visited, &mut m) {
                m.size += 1;
            }
        }
    }
    m
}

fn augment(
    adj: &[FixedBitSet],
    right: &FixedBitSet,
    i: usize,
    visited: &mut FixedBitSet,
    m: &mut Matching,
) -> bool {
    for j in adj[i].ones() {
        if right.contains(j) && !visited.contains(j) {
            visited.insert(j);
            let reachable = match m.match_right[j] {
                None => true,
                Some(i2) => augment(adj, right, i2, visited, m),
            };
            if reachable {
                m.match_left[i] = Some(j);
                m.match_right[j] = Some(i);
                return true;
            }
        }
    }
    false
}
