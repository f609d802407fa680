use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::matching::max_matching;
use crate::{CoreError, PointId};

/// Two disjoint same-size antichain levels with a relation from the lower to
/// the upper level.
///
/// Construction validates the shape (disjoint levels of equal size, edges
/// within the levels). Regularity — the existence of a perfect matching, so
/// that the union of the two levels has width equal to the level size — is
/// checked by [`core`] and [`is_core`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularBipartite {
    lower: Vec<PointId>,
    upper: Vec<PointId>,
    edges: BTreeSet<(PointId, PointId)>,
}

impl RegularBipartite {
    pub fn new(
        lower: impl IntoIterator<Item = PointId>,
        upper: impl IntoIterator<Item = PointId>,
        edges: impl IntoIterator<Item = (PointId, PointId)>,
    ) -> Result<Self, CoreError> {
        let mut lower: Vec<PointId> = lower.into_iter().collect();
        let mut upper: Vec<PointId> = upper.into_iter().collect();
        lower.sort();
        upper.sort();
        for level in [&lower, &upper] {
            for pair in level.windows(2) {
                if pair[0] == pair[1] {
                    return Err(CoreError::DuplicateLevelPoint(pair[0]));
                }
            }
        }
        if lower.len() != upper.len() {
            return Err(CoreError::SizeMismatch {
                lower: lower.len(),
                upper: upper.len(),
            });
        }
        if let Some(&p) = lower.iter().find(|p| upper.binary_search(p).is_ok()) {
            return Err(CoreError::OverlappingLevels(p));
        }
        let edges: BTreeSet<(PointId, PointId)> = edges.into_iter().collect();
        for &(l, t) in &edges {
            if lower.binary_search(&l).is_err() || upper.binary_search(&t).is_err() {
                return Err(CoreError::EdgeOutsideLevels(l, t));
            }
        }
        Ok(Self {
            lower,
            upper,
            edges,
        })
    }

    /// The common size of the two levels.
    pub fn width(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[PointId] {
        &self.lower
    }

    pub fn upper(&self) -> &[PointId] {
        &self.upper
    }

    pub fn edges(&self) -> &BTreeSet<(PointId, PointId)> {
        &self.edges
    }

    pub fn has_edge(&self, l: PointId, t: PointId) -> bool {
        self.edges.contains(&(l, t))
    }

    fn lower_index(&self, p: PointId) -> usize {
        self.lower.binary_search(&p).expect("lower level member")
    }

    fn upper_index(&self, p: PointId) -> usize {
        self.upper.binary_search(&p).expect("upper level member")
    }

    /// Adjacency rows over level indices: row `i` holds the upper indices
    /// related to lower point `i`.
    fn adjacency(&self) -> Vec<FixedBitSet> {
        let w = self.width();
        let mut adj = vec![FixedBitSet::with_capacity(w); w];
        for &(l, t) in &self.edges {
            adj[self.lower_index(l)].insert(self.upper_index(t));
        }
        adj
    }

    /// Out-degrees of the lower level, sorted ascending.
    pub fn lower_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.width()];
        for &(l, _) in &self.edges {
            deg[self.lower_index(l)] += 1;
        }
        deg.sort_unstable();
        deg
    }

    /// In-degrees of the upper level, sorted ascending.
    pub fn upper_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.width()];
        for &(_, t) in &self.edges {
            deg[self.upper_index(t)] += 1;
        }
        deg.sort_unstable();
        deg
    }
}

/// The nine cores of width at most 3, named by the out-degree multiset of
/// the lower level.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoreTag {
    P1,
    P11,
    P22,
    P111,
    P122,
    P222,
    P223,
    P233,
    P333,
}

impl CoreTag {
    pub const ALL: [CoreTag; 9] = [
        CoreTag::P1,
        CoreTag::P11,
        CoreTag::P22,
        CoreTag::P111,
        CoreTag::P122,
        CoreTag::P222,
        CoreTag::P223,
        CoreTag::P233,
        CoreTag::P333,
    ];

    pub fn width(self) -> usize {
        match self {
            CoreTag::P1 => 1,
            CoreTag::P11 | CoreTag::P22 => 2,
            _ => 3,
        }
    }

    /// The canonical edge set over level indices `0..width`.
    pub fn canonical_edges(self) -> &'static [(usize, usize)] {
        match self {
            CoreTag::P1 => &[(0, 0)],
            CoreTag::P11 => &[(0, 0), (1, 1)],
            CoreTag::P22 => &[(0, 0), (0, 1), (1, 0), (1, 1)],
            CoreTag::P111 => &[(0, 0), (1, 1), (2, 2)],
            CoreTag::P122 => &[(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)],
            CoreTag::P222 => &[(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2)],
            CoreTag::P223 => &[(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)],
            CoreTag::P233 => &[
                (0, 0),
                (0, 1),
                (0, 2),
                (1, 0),
                (1, 1),
                (1, 2),
                (2, 1),
                (2, 2),
            ],
            CoreTag::P333 => &[
                (0, 0),
                (0, 1),
                (0, 2),
                (1, 0),
                (1, 1),
                (1, 2),
                (2, 0),
                (2, 1),
                (2, 2),
            ],
        }
    }

    /// The lower-level degree multiset (sorted) of the canonical poset.
    pub fn degree_multiset(self) -> &'static [usize] {
        match self {
            CoreTag::P1 => &[1],
            CoreTag::P11 => &[1, 1],
            CoreTag::P22 => &[2, 2],
            CoreTag::P111 => &[1, 1, 1],
            CoreTag::P122 => &[1, 2, 2],
            CoreTag::P222 => &[2, 2, 2],
            CoreTag::P223 => &[2, 2, 3],
            CoreTag::P233 => &[2, 3, 3],
            CoreTag::P333 => &[3, 3, 3],
        }
    }
}

impl fmt::Display for CoreTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Result of classifying a width ≤ 3 core: its tag and an explicit
/// relabeling of the canonical points onto the actual ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreClass {
    pub tag: CoreTag,
    /// `lower_map[i]` is the actual id playing canonical lower point `i`.
    pub lower_map: Vec<PointId>,
    /// `upper_map[j]` is the actual id playing canonical upper point `j`.
    pub upper_map: Vec<PointId>,
}

/// The core of a regular bipartite poset: the union of all of its perfect
/// matchings.
///
/// One perfect matching is found by augmenting paths; an edge then belongs
/// to some perfect matching iff it is matched or lies on an alternating
/// cycle, detected via strongly connected components of the orientation
/// induced by the matching (matched edges point up, unmatched edges point
/// down).
pub fn core(rb: &RegularBipartite) -> Result<RegularBipartite, CoreError> {
    let w = rb.width();
    let adj = rb.adjacency();
    let mut full = FixedBitSet::with_capacity(w);
    full.insert_range(..);
    let m = max_matching(&adj, &full, &full);
    if m.size < w {
        return Err(CoreError::NoPerfectMatching);
    }
    // Orientation on nodes 0..w (lower) and w..2w (upper).
    let mut arcs = vec![Vec::new(); 2 * w];
    for &(l, t) in rb.edges() {
        let i = rb.lower_index(l);
        let j = rb.upper_index(t);
        if m.match_left[i] == Some(j) {
            arcs[i].push(w + j);
        } else {
            arcs[w + j].push(i);
        }
    }
    let scc = strongly_connected_components(&arcs);
    let kept = rb
        .edges()
        .iter()
        .copied()
        .filter(|&(l, t)| {
            let i = rb.lower_index(l);
            let j = rb.upper_index(t);
            m.match_left[i] == Some(j) || scc[i] == scc[w + j]
        })
        .collect::<BTreeSet<_>>();
    RegularBipartite::new(rb.lower.iter().copied(), rb.upper.iter().copied(), kept)
}

/// Whether the poset equals its own core (false when no perfect matching
/// exists).
pub fn is_core(rb: &RegularBipartite) -> bool {
    core(rb).map(|c| c == *rb).unwrap_or(false)
}

/// Names a core of width 1..=3 and exhibits a relabeling onto the canonical
/// poset of that name.
pub fn classify_core(rb: &RegularBipartite) -> Result<CoreClass, CoreError> {
    let w = rb.width();
    if !(1..=3).contains(&w) {
        return Err(CoreError::WidthTooLarge(w));
    }
    if !is_core(rb) {
        return Err(CoreError::NotACore);
    }
    let degrees = rb.lower_degrees();
    let tag = CoreTag::ALL
        .into_iter()
        .find(|t| t.width() == w && t.degree_multiset() == degrees.as_slice())
        .ok_or(CoreError::NotACore)?;
    let canonical = tag.canonical_edges();
    for low_perm in permutations(w) {
        for up_perm in permutations(w) {
            let mapped: BTreeSet<(PointId, PointId)> = canonical
                .iter()
                .map(|&(i, j)| (rb.lower[low_perm[i]], rb.upper[up_perm[j]]))
                .collect();
            if &mapped == rb.edges() {
                return Ok(CoreClass {
                    tag,
                    lower_map: low_perm.iter().map(|&k| rb.lower[k]).collect(),
                    upper_map: up_perm.iter().map(|&k| rb.upper[k]).collect(),
                });
            }
        }
    }
    Err(CoreError::NotACore)
}

/// Superposes two core relations that share a middle level: the result
/// relates `l` to `t` iff some middle point sits above `l` and below `t`.
pub fn compose_matched_cores(
    lm: &RegularBipartite,
    mt: &RegularBipartite,
) -> Result<RegularBipartite, CoreError> {
    if lm.upper != mt.lower {
        return Err(CoreError::LevelMismatch);
    }
    let mut edges = BTreeSet::new();
    for &(l, m) in lm.edges() {
        for &(m2, t) in mt.edges() {
            if m == m2 {
                edges.insert((l, t));
            }
        }
    }
    RegularBipartite::new(lm.lower.iter().copied(), mt.upper.iter().copied(), edges)
}

/// All permutations of `0..n` in lexicographic order (n ≤ 3 in practice).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    match n {
        0 => vec![vec![]],
        1 => vec![vec![0]],
        2 => vec![vec![0, 1], vec![1, 0]],
        3 => vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ],
        _ => {
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
    }
}

/// Tarjan's algorithm; returns the component index of every node.
fn strongly_connected_components(arcs: &[Vec<usize>]) -> Vec<usize> {
    struct State<'a> {
        arcs: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next_index: usize,
        comp: Vec<usize>,
        next_comp: usize,
    }

    fn visit(s: &mut State<'_>, v: usize) {
        let idx = s.next_index;
        s.next_index += 1;
        s.index[v] = Some(idx);
        s.low[v] = idx;
        s.stack.push(v);
        s.on_stack[v] = true;
        for k in 0..s.arcs[v].len() {
            let u = s.arcs[v][k];
            match s.index[u] {
                None => {
                    visit(s, u);
                    s.low[v] = s.low[v].min(s.low[u]);
                }
                Some(ui) => {
                    if s.on_stack[u] {
                        s.low[v] = s.low[v].min(ui);
                    }
                }
            }
        }
        if s.low[v] == s.index[v].unwrap() {
            loop {
                let u = s.stack.pop().unwrap();
                s.on_stack[u] = false;
                s.comp[u] = s.next_comp;
                if u == v {
                    break;
                }
            }
            s.next_comp += 1;
        }
    }

    let n = arcs.len();
    let mut s = State {
        arcs,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next_index: 0,
        comp: vec![0; n],
        next_comp: 0,
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.comp
}
