//! Stock Spoiler-side sources: deterministic shapes, seeded random
//! generators, and transcript replay.
//!
//! Every source here is oblivious — it never looks at the Algorithm's
//! answers, so a given seed yields the same presentation against any
//! opponent. The width-capped and interval sources own the bookkeeping
//! needed to keep their structural promises (a shadow matching, lane
//! frontiers), so they stay cheap even for long games.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use poset_core::text::TextError;
use poset_core::{text, CoreTag, PointId, Poset, RegularBipartite};

use crate::arrival::{Arrival, GameView, PointSource};
use crate::local::{KeepSide, LocalBoard, LocalMove, LocalMoveSource, Multicoloring};
use crate::transcript::{arrivals_of_poset, ChainTranscript};

/// Presents one infinite chain: every point above all previous ones.
#[derive(Debug, Default)]
pub struct ChainSource {
    produced: i64,
}

impl ChainSource {
    pub fn new() -> Self {
        Self::default()
    }
}

impl PointSource for ChainSource {
    fn next_point(&mut self, _view: GameView<'_>) -> Option<Arrival> {
        let id = PointId(self.produced);
        let down_set: BTreeSet<PointId> = (0..self.produced).map(PointId).collect();
        self.produced += 1;
        Some(Arrival { id, down_set })
    }
}

/// Presents one infinite antichain: every point incomparable to the rest.
#[derive(Debug, Default)]
pub struct AntichainSource {
    produced: i64,
}

impl AntichainSource {
    pub fn new() -> Self {
        Self::default()
    }
}

impl PointSource for AntichainSource {
    fn next_point(&mut self, _view: GameView<'_>) -> Option<Arrival> {
        let id = PointId(self.produced);
        self.produced += 1;
        Some(Arrival::new(id, []))
    }
}

/// Replays a fixed presentation, in order. Arrivals can come from a
/// poset's insertion order, from the text poset format, or from a
/// transcript.
#[derive(Debug, Clone)]
pub struct ReplaySource {
    arrivals: std::vec::IntoIter<Arrival>,
}

impl ReplaySource {
    pub fn new(arrivals: impl IntoIterator<Item = Arrival>) -> Self {
        Self {
            arrivals: arrivals.into_iter().collect::<Vec<_>>().into_iter(),
        }
    }

    /// Replays the points of `poset` in their original insertion order.
    pub fn from_poset(poset: &Poset) -> Self {
        Self::new(arrivals_of_poset(poset))
    }

    /// Parses the `p <id> [<pred> ...]` poset format and replays it.
    pub fn from_poset_text(input: &str) -> Result<Self, TextError> {
        Ok(Self::from_poset(&text::parse_poset(input)?))
    }

    /// Replays the arrivals of a transcript, dropping the chain choices.
    pub fn from_transcript(transcript: &ChainTranscript) -> Self {
        Self::new(transcript.rounds().map(|(arrival, _)| arrival.clone()))
    }
}

impl PointSource for ReplaySource {
    fn next_point(&mut self, _view: GameView<'_>) -> Option<Arrival> {
        self.arrivals.next()
    }
}

/// Presents an unconstrained random poset: each new point goes above the
/// down-closure of a few randomly chosen existing points.
#[derive(Debug)]
pub struct RandomPosetSource {
    rng: ChaCha8Rng,
}

impl RandomPosetSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl PointSource for RandomPosetSource {
    fn next_point(&mut self, view: GameView<'_>) -> Option<Arrival> {
        let points: Vec<PointId> = view.poset.points().collect();
        let id = PointId(points.iter().map(|p| p.0).max().map_or(0, |m| m + 1));
        let upto = points.len().min(3);
        let generators = self.rng.random_range(0..=upto);
        let mut down_set = BTreeSet::new();
        for i in sample(&mut self.rng, points.len(), generators) {
            let p = points[i];
            down_set.extend(view.poset.down_set(p));
            down_set.insert(p);
        }
        Some(Arrival { id, down_set })
    }
}

/// Presents a random poset of width exactly `width`.
///
/// The first `width` points form an antichain, so the width is reached;
/// a shadow chain cover (one incremental matching on the comparability
/// split graph) rejects any candidate that would push the width past the
/// cap. A candidate above every existing point is always legal, so the
/// source never stalls.
#[derive(Debug)]
pub struct RandomWidthSource {
    rng: ChaCha8Rng,
    cap: usize,
    /// Down-closure rows: `below[j]` holds the indices strictly below `j`.
    below: Vec<FixedBitSet>,
    /// `match_up[i]`: the point just above `i` in the shadow chain cover.
    match_up: Vec<Option<usize>>,
    /// `match_down[j]`: the point just below `j` in the shadow chain cover.
    match_down: Vec<Option<usize>>,
    matching: usize,
}

impl RandomWidthSource {
    /// `width ≥ 1` is both a hard cap and, from the `width`-th point on, a
    /// lower bound on the generated poset's width.
    pub fn new(width: usize, seed: u64) -> Self {
        assert!(width >= 1, "width must be positive");
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            cap: width,
            below: Vec::new(),
            match_up: Vec::new(),
            match_down: Vec::new(),
            matching: 0,
        }
    }

    fn width(&self) -> usize {
        self.below.len() - self.matching
    }

    /// Down-closure of a few random generator points, as a bit row.
    fn random_candidate(&mut self) -> FixedBitSet {
        let n = self.below.len();
        let mut row = FixedBitSet::with_capacity(n);
        let generators = self.rng.random_range(0..=n.min(3));
        for i in sample(&mut self.rng, n, generators) {
            row.insert(i);
            row.union_with(&self.below[i]);
        }
        row
    }

    /// Tries to append a point whose strict down-set is `row`; rejects it
    /// (restoring all state) if the width would exceed the cap.
    fn try_arrival(&mut self, row: FixedBitSet) -> bool {
        let n = self.below.len();
        self.below.push(row);
        self.match_up.push(None);
        self.match_down.push(None);
        let mut visited = FixedBitSet::with_capacity(n + 1);
        let neighbors = self.below[n].clone();
        if augment_right(
            &self.below,
            &mut self.match_up,
            &mut self.match_down,
            n,
            &neighbors,
            &mut visited,
        ) {
            self.matching += 1;
            true
        } else if n - self.matching < self.cap {
            // A failed augmentation leaves the matching untouched, so the
            // new point simply starts one more chain.
            true
        } else {
            self.below.pop();
            self.match_up.pop();
            self.match_down.pop();
            false
        }
    }
}

/// One round of right-rooted augmentation: find a chain-cover slot for the
/// incoming point `j`, whose candidate predecessors are `neighbors`. The
/// matching is only modified when an augmenting path is found.
fn augment_right(
    below: &[FixedBitSet],
    match_up: &mut [Option<usize>],
    match_down: &mut [Option<usize>],
    j: usize,
    neighbors: &FixedBitSet,
    visited: &mut FixedBitSet,
) -> bool {
    for i in neighbors.ones() {
        if visited.contains(i) {
            continue;
        }
        visited.insert(i);
        let free = match match_up[i] {
            None => true,
            Some(j2) => {
                let next = below[j2].clone();
                augment_right(below, match_up, match_down, j2, &next, visited)
            }
        };
        if free {
            match_up[i] = Some(j);
            match_down[j] = Some(i);
            return true;
        }
    }
    false
}

impl PointSource for RandomWidthSource {
    fn next_point(&mut self, _view: GameView<'_>) -> Option<Arrival> {
        let n = self.below.len();
        if n < self.cap {
            assert!(self.try_arrival(FixedBitSet::with_capacity(n)));
        } else {
            let mut accepted = false;
            for _ in 0..8 {
                let candidate = self.random_candidate();
                if self.try_arrival(candidate) {
                    accepted = true;
                    break;
                }
            }
            if !accepted {
                // Everything below: never raises the width.
                let mut all = FixedBitSet::with_capacity(n);
                all.insert_range(..);
                assert!(self.try_arrival(all));
            }
        }
        debug_assert!(self.width() <= self.cap);
        let id = self.below.len() - 1;
        let down_set = self.below[id].ones().map(|i| PointId(i as i64)).collect();
        Some(Arrival {
            id: PointId(id as i64),
            down_set,
        })
    }
}

/// Presents a random interval order of width exactly `width`, up-growing.
///
/// Intervals live in `width` lanes; within a lane each interval starts
/// strictly after its predecessor ends, so lanes are chains and the width
/// never exceeds the lane count. The seed intervals pairwise overlap, so
/// the width is reached. Every right endpoint is clamped to at least the
/// largest left endpoint seen so far, which keeps each new interval
/// maximal.
#[derive(Debug)]
pub struct RandomUpGrowingIntervalSource {
    rng: ChaCha8Rng,
    width: usize,
    /// Right endpoint of the last interval of each lane.
    frontier: Vec<i64>,
    /// All intervals presented so far: `(id, left, right)`.
    intervals: Vec<(PointId, i64, i64)>,
    max_left: i64,
}

impl RandomUpGrowingIntervalSource {
    pub fn new(width: usize, seed: u64) -> Self {
        assert!(width >= 1, "width must be positive");
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            width,
            frontier: Vec::new(),
            intervals: Vec::new(),
            max_left: 0,
        }
    }

    /// The intervals presented so far, in presentation order.
    pub fn intervals(&self) -> &[(PointId, i64, i64)] {
        &self.intervals
    }

    fn push(&mut self, lane: usize, left: i64, right: i64) -> Arrival {
        let id = PointId(self.intervals.len() as i64);
        let down_set: BTreeSet<PointId> = self
            .intervals
            .iter()
            .filter(|&&(_, _, r)| r < left)
            .map(|&(p, _, _)| p)
            .collect();
        self.intervals.push((id, left, right));
        self.max_left = self.max_left.max(left);
        if lane == self.frontier.len() {
            self.frontier.push(right);
        } else {
            self.frontier[lane] = right;
        }
        Arrival { id, down_set }
    }
}

impl PointSource for RandomUpGrowingIntervalSource {
    fn next_point(&mut self, _view: GameView<'_>) -> Option<Arrival> {
        let w = self.width;
        let k = self.intervals.len();
        if k < w {
            // Seed lane k with one of w pairwise overlapping intervals.
            let (left, right) = (k as i64 + 1, (w + k) as i64 + 1);
            return Some(self.push(k, left, right));
        }
        let lane = self.rng.random_range(0..w);
        let left = self.frontier[lane] + self.rng.random_range(1..=3);
        let length = self.rng.random_range(1..=8);
        let right = (left + length).max(self.max_left);
        Some(self.push(lane, left, right))
    }
}

/// A Spoiler for the local game that plays random legal moves and keeps a
/// random side.
///
/// Each round it tries a few random core shapes (relabeled canonical cores
/// of the right width, which exist for `w ≤ 3`) and accepts the first pair
/// whose composite relation fits inside the board; failing that, it routes
/// the middle through a random perfect matching of the board, which is
/// always legal.
#[derive(Debug)]
pub struct RandomLocalSource {
    rng: ChaCha8Rng,
    next_fresh: i64,
}

impl RandomLocalSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            next_fresh: 1,
        }
    }

    fn fresh_middle(&mut self, w: usize) -> Vec<PointId> {
        let start = self.next_fresh;
        self.next_fresh += w as i64;
        (0..w as i64).map(|k| PointId(start + k)).collect()
    }

    /// Random relabeling of a canonical core onto actual levels.
    fn shaped_edges(
        &mut self,
        tag: CoreTag,
        lower: &[PointId],
        upper: &[PointId],
    ) -> BTreeSet<(PointId, PointId)> {
        let mut lo: Vec<PointId> = lower.to_vec();
        let mut up: Vec<PointId> = upper.to_vec();
        lo.shuffle(&mut self.rng);
        up.shuffle(&mut self.rng);
        tag.canonical_edges()
            .iter()
            .map(|&(i, j)| (lo[i], up[j]))
            .collect()
    }
}

impl LocalMoveSource for RandomLocalSource {
    fn first_board(&mut self, w: usize) -> (Vec<PointId>, Vec<PointId>) {
        let lower: Vec<PointId> = (1..=w as i64).map(PointId).collect();
        let upper: Vec<PointId> = (w as i64 + 1..=2 * w as i64).map(PointId).collect();
        self.next_fresh = 2 * w as i64 + 1;
        (lower, upper)
    }

    fn next_move(&mut self, board: &LocalBoard) -> Option<LocalMove> {
        let w = board.width();
        let on_board = board
            .lower()
            .iter()
            .chain(board.upper())
            .map(|p| p.0)
            .max()
            .unwrap_or(0);
        self.next_fresh = self.next_fresh.max(on_board + 1);
        let middle = self.fresh_middle(w);
        let tags: Vec<CoreTag> = CoreTag::ALL
            .into_iter()
            .filter(|t| t.width() == w)
            .collect();
        if !tags.is_empty() {
            for _ in 0..16 {
                let tag_lm = tags[self.rng.random_range(0..tags.len())];
                let tag_mt = tags[self.rng.random_range(0..tags.len())];
                let edges_lm = self.shaped_edges(tag_lm, board.lower(), &middle);
                let edges_mt = self.shaped_edges(tag_mt, &middle, board.upper());
                let transitive = edges_lm.iter().all(|&(l, m)| {
                    edges_mt
                        .iter()
                        .filter(|&&(m2, _)| m2 == m)
                        .all(|&(_, t)| board.order().has_edge(l, t))
                });
                if transitive {
                    return Some(LocalMove {
                        middle: middle.iter().copied().collect(),
                        edges_lm,
                        edges_mt,
                    });
                }
            }
        }
        // Fallback: thread the middle through a perfect matching.
        let pm = random_perfect_matching(board.order(), &mut self.rng);
        let edges_lm: BTreeSet<(PointId, PointId)> = pm
            .iter()
            .zip(&middle)
            .map(|(&(l, _), &m)| (l, m))
            .collect();
        let edges_mt: BTreeSet<(PointId, PointId)> = pm
            .iter()
            .zip(&middle)
            .map(|(&(_, t), &m)| (m, t))
            .collect();
        Some(LocalMove {
            middle: middle.into_iter().collect(),
            edges_lm,
            edges_mt,
        })
    }

    fn choose_side(
        &mut self,
        _board: &LocalBoard,
        _mv: &LocalMove,
        _coloring: &Multicoloring,
    ) -> KeepSide {
        if self.rng.random_bool(0.5) {
            KeepSide::Lower
        } else {
            KeepSide::Upper
        }
    }
}

/// A uniformly chosen perfect matching of a core (among the first 64
/// found). Panics if the relation has none; cores always do.
fn random_perfect_matching(
    order: &RegularBipartite,
    rng: &mut ChaCha8Rng,
) -> Vec<(PointId, PointId)> {
    let w = order.width();
    let mut found: Vec<Vec<(PointId, PointId)>> = Vec::new();
    let mut used = vec![false; w];
    let mut current: Vec<(PointId, PointId)> = Vec::with_capacity(w);
    fn backtrack(
        order: &RegularBipartite,
        i: usize,
        used: &mut [bool],
        current: &mut Vec<(PointId, PointId)>,
        found: &mut Vec<Vec<(PointId, PointId)>>,
    ) {
        if found.len() >= 64 {
            return;
        }
        if i == order.width() {
            found.push(current.clone());
            return;
        }
        let l = order.lower()[i];
        for (j, &t) in order.upper().iter().enumerate() {
            if !used[j] && order.has_edge(l, t) {
                used[j] = true;
                current.push((l, t));
                backtrack(order, i + 1, used, current, found);
                current.pop();
                used[j] = false;
            }
        }
    }
    backtrack(order, 0, &mut used, &mut current, &mut found);
    assert!(!found.is_empty(), "a core has a perfect matching");
    found.swap_remove(rng.random_range(0..found.len()))
}
