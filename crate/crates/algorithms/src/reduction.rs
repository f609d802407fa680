//! The composed on-line chain partitioner for posets of width at most 3.
//!
//! [`ReductionState`] turns the local colorer of [`crate::local`] into a
//! full on-line chain partitioning strategy. It maintains one *level* per
//! unit of width. Level `i` owns a tower of maximum antichains of a growing
//! subposet `P_i`, linearly ordered by antichain domination (`A ⊴ B` iff
//! every point of `A` lies below or equals a point of `B`), bracketed by `i`
//! virtual bottom sentinels and `i` virtual top sentinels. Every consecutive
//! antichain pair carries a live local-game board whose points are formal
//! copies of the antichain members, related by the core of the lifted
//! comparabilities, and multicolored from level `i`'s fixed palette.
//!
//! An arriving point `x` is routed to the smallest level `i₀` such that `x`
//! does not raise the width of any `P_j ∪ {x}` with `j ≥ i₀` above `j`. The
//! state computes a maximum antichain `A_x ∋ x` squeezed between the unique
//! neighbouring tower antichains `A_d ⊴ A_x ⊴ A_u`, splits the board of
//! `(A_d, A_u)` with a move whose middle is a fresh copy of `A_x`, and colors
//! the middle with [`crate::local::local_round`]. The answer chain of `x` is
//! the pair `(i₀, γ)` for the smallest color `γ` the middle copy of `x`
//! received. Because colors never leave the per-level palettes, the whole
//! strategy uses at most 1 + 4 + 11 = 16 chains on width-3 posets, 5 on
//! width-2 posets, and 1 on chains.
//!
//! [`verify_reduction`] re-checks the entire structural invariant from
//! scratch and is the ground truth the tests compare against.

use std::collections::{BTreeMap, BTreeSet};

use game_engine::{
    Arrival, ColorId, ColorSet, KeepSide, LocalBoard, LocalMove, Multicoloring, Partitioner,
    StrategyError,
};
use poset_core::{core, PointId, Poset, RegularBipartite};

use crate::error::ComposedError;
use crate::local::{local_first_round, local_round, verify_width3_invariant};

/// Board copy ids start here and shrink; sentinel ids stay in `-6..=-1`, so
/// the two ranges never meet.
const FIRST_COPY_ID: i64 = -16;

/// The `i`-th virtual bottom sentinel (1-based): below every real point.
fn bottom(i: usize) -> PointId {
    PointId(-(2 * i as i64 - 1))
}

/// The `i`-th virtual top sentinel (1-based): above every real point.
fn top(i: usize) -> PointId {
    PointId(-(2 * i as i64))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum SentinelKind {
    Bottom,
    Top,
}

/// Which sentinel a point id names, or `None` for a real point. Board copy
/// ids never enter the extended order, so they never reach this.
fn sentinel_kind(p: PointId) -> Option<SentinelKind> {
    if p.0 >= 0 {
        return None;
    }
    debug_assert!(p.0 > FIRST_COPY_ID, "board copies have no place in the extended order");
    if p.0 % 2 == -1 {
        Some(SentinelKind::Bottom)
    } else {
        Some(SentinelKind::Top)
    }
}

/// One live local-game board between two consecutive tower antichains.
///
/// `board.lower()[k]` is the formal copy of `lower_real[k]` (both sorted
/// ascending), and likewise for the upper level. The board relation is the
/// core of the lifted comparabilities: copy `l` relates to copy `t` iff the
/// underlying members satisfy `l ≤ t` in the extended order (reflexively, so
/// a member shared by both antichains links its own two copies).
#[derive(Clone, Debug)]
struct PairBoard {
    board: LocalBoard,
    lower_real: Vec<PointId>,
    upper_real: Vec<PointId>,
}

/// One level of the tower: the subposet `P_i`, its antichain tower, the
/// boards between consecutive antichains, and the level multicoloring.
#[derive(Clone, Debug)]
struct Level {
    /// `P_i`: sentinels `b_1..b_i, t_1..t_i` plus the real points routed to
    /// levels `1..=i` so far. Nested increasingly in the level index.
    points: BTreeSet<PointId>,
    /// Maximum antichains of `P_i`, strictly increasing under domination.
    /// First is the bottom sentinel antichain, last the top one.
    antichains: Vec<BTreeSet<PointId>>,
    /// `boards[k]` sits between `antichains[k]` and `antichains[k + 1]`.
    boards: Vec<PairBoard>,
    /// The level multicoloring: every tower member, once it first appears
    /// in this level, keeps the color set its first middle copy received.
    chi: BTreeMap<PointId, ColorSet>,
    /// The fixed palette of the level: 1, 4 or 11 colors.
    palette: ColorSet,
}

/// The full state of the composed partitioner. Grows by [`insert`]; never
/// forgets. After an `Err` the state is poisoned and must be discarded.
///
/// [`insert`]: ReductionState::insert
#[derive(Clone, Debug)]
pub struct ReductionState {
    /// Mirror of the presented poset (real points only).
    poset: Poset,
    /// `levels[i - 1]` is level `i`; there are exactly `width` levels.
    levels: Vec<Level>,
    /// Final chain of every real point: `(level, color)`, fixed on arrival.
    assigned: BTreeMap<PointId, (usize, ColorId)>,
    /// Descending allocator for board copy ids.
    next_copy: i64,
}

impl Default for ReductionState {
    fn default() -> Self {
        Self::new()
    }
}

/// The palette budget of the composed strategy: the total number of chains
/// it can ever use on a poset of the given width (1, 5 and 16 for widths
/// 1, 2 and 3). `None` above width 3.
pub fn composed_chain_bound(width: usize) -> Option<usize> {
    if width > 3 {
        return None;
    }
    Some(
        (1..=width)
            .map(|i| {
                local_first_round(i)
                    .expect("widths 1..=3 always open")
                    .palette
                    .len()
            })
            .sum(),
    )
}

/// Re-derives every invariant of `state` from scratch:
///
/// 1. there is one level per unit of width, and the `P_i` are nested with
///    exactly the sentinels `b_1..b_i, t_1..t_i` and real width ≤ `i`;
/// 2. each tower is a strictly domination-increasing run of size-`i`
///    extended antichains from the bottom sentinels to the top ones, all
///    inner antichains purely real, and `P_i` is `P_{i−1}` plus the tower
///    members;
/// 3. the level coloring covers exactly the tower members with nonempty
///    subsets of the level palette, and every color class is a chain of the
///    extended order;
/// 4. every board links consecutive antichains positionally, its relation
///    is the core of the lifted comparabilities, it passes
///    [`verify_width3_invariant`], and each copy's colors are a subset of
///    the level colors of the member it copies;
/// 5. every real point was assigned a `(level, color)` drawn from its own
///    level colors, and the class of every such pair is a chain.
pub fn verify_reduction(state: &ReductionState) -> Result<(), String> {
    let poset = &state.poset;
    if state.levels.len() != poset.width() {
        return Err(format!(
            "{} levels but width {}",
            state.levels.len(),
            poset.width()
        ));
    }
    let all_reals: BTreeSet<PointId> = poset.points().collect();

    for (idx, level) in state.levels.iter().enumerate() {
        let i = idx + 1;
        let at = |msg: String| format!("level {i}: {msg}");

        // (1) ground set: sentinels exact, reals known, width small enough.
        let sentinels: BTreeSet<PointId> = level.points.iter().copied().filter(|p| p.0 < 0).collect();
        let expected: BTreeSet<PointId> = (1..=i).flat_map(|j| [bottom(j), top(j)]).collect();
        if sentinels != expected {
            return Err(at(format!("sentinel set is {sentinels:?}")));
        }
        let reals: BTreeSet<PointId> = level.points.iter().copied().filter(|p| p.0 >= 0).collect();
        if !reals.is_subset(&all_reals) {
            return Err(at("ground set mentions unknown real points".into()));
        }
        if poset.width_of(&reals) > i {
            return Err(at(format!("real width {} exceeds {i}", poset.width_of(&reals))));
        }
        if idx > 0 && !state.levels[idx - 1].points.is_subset(&level.points) {
            return Err(at("ground set does not contain the previous level's".into()));
        }
        if i == state.levels.len() && reals != all_reals {
            return Err(at("top level must contain every real point".into()));
        }

        // (2) the antichain tower.
        if level.antichains.len() < 2 {
            return Err(at("tower needs at least the two sentinel antichains".into()));
        }
        let bottoms: BTreeSet<PointId> = (1..=i).map(bottom).collect();
        let tops: BTreeSet<PointId> = (1..=i).map(top).collect();
        if level.antichains.first() != Some(&bottoms) {
            return Err(at("tower does not start at the bottom sentinels".into()));
        }
        if level.antichains.last() != Some(&tops) {
            return Err(at("tower does not end at the top sentinels".into()));
        }
        let mut tower_members: BTreeSet<PointId> = BTreeSet::new();
        for (k, a) in level.antichains.iter().enumerate() {
            if a.len() != i {
                return Err(at(format!("antichain {k} has {} members", a.len())));
            }
            if !a.is_subset(&level.points) {
                return Err(at(format!("antichain {k} leaves the ground set")));
            }
            if k != 0 && k != level.antichains.len() - 1 && a.iter().any(|p| p.0 < 0) {
                return Err(at(format!("inner antichain {k} contains a sentinel")));
            }
            for &p in a {
                if a.iter().any(|&q| q != p && state.ext_le(p, q)) {
                    return Err(at(format!("antichain {k} has comparable members")));
                }
            }
            tower_members.extend(a.iter().copied());
        }
        for (k, pair) in level.antichains.windows(2).enumerate() {
            if pair[0] == pair[1] || !state.ext_dominates(&pair[0], &pair[1]) {
                return Err(at(format!("antichains {k} and {} are not strictly increasing", k + 1)));
            }
        }
        let prev: BTreeSet<PointId> = if idx == 0 {
            BTreeSet::new()
        } else {
            state.levels[idx - 1].points.clone()
        };
        let rebuilt: BTreeSet<PointId> = prev.union(&tower_members).copied().collect();
        if rebuilt != level.points {
            return Err(at("ground set is not the previous level plus the tower".into()));
        }

        // (3) the level coloring.
        let domain: BTreeSet<PointId> = level.chi.keys().copied().collect();
        if domain != tower_members {
            return Err(at("coloring domain differs from the tower members".into()));
        }
        let expected_palette = local_first_round(i)
            .map_err(|e| at(e.to_string()))?
            .palette;
        if level.palette != expected_palette {
            return Err(at(format!("palette is {:?}", level.palette)));
        }
        for (&p, colors) in &level.chi {
            if colors.is_empty() {
                return Err(at(format!("{p} has no color")));
            }
            if !colors.is_subset(&level.palette) {
                return Err(at(format!("{p} is colored outside the palette")));
            }
        }
        for &color in &level.palette {
            let class: Vec<PointId> = level
                .chi
                .iter()
                .filter(|(_, set)| set.contains(&color))
                .map(|(&p, _)| p)
                .collect();
            if let Err(msg) = state.ext_chain(&class) {
                return Err(at(format!("class of color {color} is not a chain: {msg}")));
            }
        }

        // (4) the boards.
        if level.boards.len() != level.antichains.len() - 1 {
            return Err(at("one board per consecutive antichain pair".into()));
        }
        for (k, pb) in level.boards.iter().enumerate() {
            let bat = |msg: String| at(format!("board {k}: {msg}"));
            let lower: Vec<PointId> = level.antichains[k].iter().copied().collect();
            let upper: Vec<PointId> = level.antichains[k + 1].iter().copied().collect();
            if pb.lower_real != lower || pb.upper_real != upper {
                return Err(bat("level members do not match the antichain pair".into()));
            }
            if pb.board.width() != i {
                return Err(bat(format!("board width is {}", pb.board.width())));
            }
            let lifted = state
                .lifted_core(&pb.lower_real, pb.board.lower(), &pb.upper_real, pb.board.upper())
                .map_err(&bat)?;
            if pb.board.order() != &lifted {
                return Err(bat("board relation differs from the lifted core".into()));
            }
            if let Err(msg) = verify_width3_invariant(&pb.board) {
                return Err(bat(msg));
            }
            for (copies, members) in [
                (pb.board.lower(), &pb.lower_real),
                (pb.board.upper(), &pb.upper_real),
            ] {
                for (copy, &member) in copies.iter().zip(members.iter()) {
                    let have = pb.board.colors_of(*copy);
                    let allowed = &level.chi[&member];
                    if !have.is_subset(allowed) {
                        return Err(bat(format!(
                            "copy of {member} carries colors outside its level colors"
                        )));
                    }
                }
            }
        }
    }

    // (5) the answer chains.
    let assigned: BTreeSet<PointId> = state.assigned.keys().copied().collect();
    if assigned != all_reals {
        return Err("some real point has no chain assignment".into());
    }
    let mut classes: BTreeMap<(usize, ColorId), Vec<PointId>> = BTreeMap::new();
    for (&p, &(lvl, color)) in &state.assigned {
        let level = state
            .levels
            .get(lvl - 1)
            .ok_or_else(|| format!("{p} assigned to missing level {lvl}"))?;
        if !level.chi.get(&p).is_some_and(|set| set.contains(&color)) {
            return Err(format!("{p} assigned ({lvl}, {color}) outside its level colors"));
        }
        classes.entry((lvl, color)).or_default().push(p);
    }
    for ((lvl, color), mut class) in classes {
        class.sort_by_key(|&p| poset.down_set_len(p));
        for pair in class.windows(2) {
            if !poset.le(pair[0], pair[1]) {
                return Err(format!(
                    "chain ({lvl}, {color}) holds incomparable points {} and {}",
                    pair[0], pair[1]
                ));
            }
        }
    }
    Ok(())
}

impl ReductionState {
    pub fn new() -> Self {
        Self {
            poset: Poset::new(),
            levels: Vec::new(),
            assigned: BTreeMap::new(),
            next_copy: FIRST_COPY_ID,
        }
    }

    /// The mirror of the points presented so far.
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Current width, i.e. the number of levels.
    pub fn width(&self) -> usize {
        self.levels.len()
    }

    /// The chain `(level, color)` a presented point was assigned.
    pub fn chain_of(&self, p: PointId) -> Option<(usize, ColorId)> {
        self.assigned.get(&p).copied()
    }

    /// Presents one point above the transitive closure of `predecessors`
    /// and returns its chain as a `(level, color)` pair. Errors on malformed
    /// arrivals, on width exceeding 3, and on internal coloring failures;
    /// the state must be discarded afterwards.
    pub fn insert(
        &mut self,
        id: PointId,
        predecessors: &BTreeSet<PointId>,
    ) -> Result<(usize, ColorId), ComposedError> {
        self.poset
            .add_point(id, predecessors)
            .map_err(|e| ComposedError::InvalidArrival(e.to_string()))?;
        let w_plus = self.poset.width();
        if w_plus > 3 {
            return Err(ComposedError::WidthTooLarge(w_plus));
        }
        let bumped = w_plus > self.levels.len();
        if bumped {
            self.open_level(w_plus)?;
        }

        // The target level: the smallest i₀ such that adding the point
        // keeps the width of every P_j with j ≥ i₀ at j. At j = w⁺ the
        // condition always holds, so the scan below terminates with
        // 1 ≤ i₀ ≤ w⁺.
        let mut i0 = w_plus;
        for j in (1..w_plus).rev() {
            let mut restrict = self.real_points(j);
            restrict.insert(id);
            if self.poset.width_of(&restrict) <= j {
                i0 = j;
            } else {
                break;
            }
        }

        // A seed antichain through the arrival: the lexicographically
        // smallest maximum antichain of P_{i₀−1} plus the point. Its size
        // is i₀ and it must contain the point, because the point bumps the
        // width of P_{i₀−1}.
        let mut restrict = if i0 >= 2 {
            self.real_points(i0 - 1)
        } else {
            BTreeSet::new()
        };
        restrict.insert(id);
        let a0 = self.poset.max_antichain(&restrict).into_members();
        debug_assert_eq!(a0.len(), i0);
        debug_assert!(a0.contains(&id));

        // The unique neighbouring tower pair: A_d is the last antichain
        // with a member strictly below the arrival, and its successor A_u
        // is the first with a member strictly above. The two predicates
        // split the tower, because every tower antichain stays maximum
        // once the point joins, hence has a member comparable to it.
        let d = self.levels[i0 - 1]
            .antichains
            .iter()
            .rposition(|a| a.iter().any(|&m| self.ext_lt(m, id)))
            .expect("the bottom sentinels lie below every real point");
        let a_d = self.levels[i0 - 1].antichains[d].clone();
        let a_u = self.levels[i0 - 1].antichains[d + 1].clone();
        debug_assert!(
            a_u.iter().any(|&m| self.ext_lt(id, m)),
            "the successor antichain must reach above the arrival"
        );

        // Squeeze the new antichain between them: (A₀ ∨ A_d) ∧ A_u in the
        // lattice of maximum antichains of P_{i₀} plus the point.
        let join = self.ext_maximal(a0.iter().chain(&a_d).copied().collect());
        let a_x = self.ext_minimal(join.iter().chain(&a_u).copied().collect());
        debug_assert_eq!(a_x.len(), i0);
        debug_assert!(a_x.contains(&id));
        debug_assert!(a_x.iter().all(|p| p.0 >= 0), "squeezed antichains are purely real");
        debug_assert!(a_x != a_d && self.ext_dominates(&a_d, &a_x));
        debug_assert!(a_x != a_u && self.ext_dominates(&a_x, &a_u));
        if bumped {
            debug_assert_eq!(i0, w_plus);
            debug_assert_eq!(d, 0);
            debug_assert_eq!(a_x, a0);
        }

        let color = self.split_pair(i0, d, &a_x, id)?;
        for level in &mut self.levels[i0 - 1..] {
            level.points.insert(id);
        }
        self.assigned.insert(id, (i0, color));
        Ok((i0, color))
    }

    /// The real (non-sentinel) part of `P_i`.
    fn real_points(&self, i: usize) -> BTreeSet<PointId> {
        self.levels[i - 1]
            .points
            .iter()
            .copied()
            .filter(|p| p.0 >= 0)
            .collect()
    }

    /// `w` fresh board copy ids, ascending.
    fn alloc_copies(&mut self, w: usize) -> Vec<PointId> {
        let start = self.next_copy - (w as i64 - 1);
        self.next_copy -= w as i64;
        (0..w as i64).map(|k| PointId(start + k)).collect()
    }

    /// Extended order: sentinels bracket every real point, bottoms below
    /// tops, and real points compare in the mirror poset. Reflexive.
    fn ext_le(&self, u: PointId, v: PointId) -> bool {
        if u == v {
            return true;
        }
        match (sentinel_kind(u), sentinel_kind(v)) {
            (Some(SentinelKind::Bottom), Some(SentinelKind::Bottom)) => false,
            (Some(SentinelKind::Top), Some(SentinelKind::Top)) => false,
            (Some(SentinelKind::Bottom), _) => true,
            (_, Some(SentinelKind::Top)) => true,
            (Some(SentinelKind::Top), _) => false,
            (_, Some(SentinelKind::Bottom)) => false,
            (None, None) => self.poset.le(u, v),
        }
    }

    fn ext_lt(&self, u: PointId, v: PointId) -> bool {
        u != v && self.ext_le(u, v)
    }

    /// `a ⊴ b`: every member of `a` lies below or equals a member of `b`.
    fn ext_dominates(&self, a: &BTreeSet<PointId>, b: &BTreeSet<PointId>) -> bool {
        a.iter().all(|&p| b.iter().any(|&q| self.ext_le(p, q)))
    }

    fn ext_maximal(&self, set: BTreeSet<PointId>) -> BTreeSet<PointId> {
        set.iter()
            .copied()
            .filter(|&p| !set.iter().any(|&q| q != p && self.ext_le(p, q)))
            .collect()
    }

    fn ext_minimal(&self, set: BTreeSet<PointId>) -> BTreeSet<PointId> {
        set.iter()
            .copied()
            .filter(|&p| !set.iter().any(|&q| q != p && self.ext_le(q, p)))
            .collect()
    }

    /// Whether the points are pairwise comparable in the extended order.
    fn ext_chain(&self, class: &[PointId]) -> Result<(), String> {
        let mut members = class.to_vec();
        members.sort_by_key(|&p| match sentinel_kind(p) {
            Some(SentinelKind::Bottom) => (0, 0),
            None => (1, self.poset.down_set_len(p)),
            Some(SentinelKind::Top) => (2, 0),
        });
        for pair in members.windows(2) {
            if !self.ext_le(pair[0], pair[1]) {
                return Err(format!("{} and {} are incomparable", pair[0], pair[1]));
            }
        }
        Ok(())
    }

    /// The core of the lifted comparabilities between two antichains, over
    /// the given copy ids (both slices aligned with their sorted members).
    /// Lifting is reflexive: a shared member links its own two copies.
    fn lifted_core(
        &self,
        lower_real: &[PointId],
        lower_copies: &[PointId],
        upper_real: &[PointId],
        upper_copies: &[PointId],
    ) -> Result<RegularBipartite, String> {
        let mut edges = BTreeSet::new();
        for (j, &lr) in lower_real.iter().enumerate() {
            for (k, &ur) in upper_real.iter().enumerate() {
                if self.ext_le(lr, ur) {
                    edges.insert((lower_copies[j], upper_copies[k]));
                }
            }
        }
        let rb = RegularBipartite::new(
            lower_copies.iter().copied(),
            upper_copies.iter().copied(),
            edges,
        )
        .map_err(|e| e.to_string())?;
        core(&rb).map_err(|e| e.to_string())
    }

    /// Opens level `w` when the width grows: sentinel antichains, a complete
    /// board between their copies, and the opening palette of the local
    /// colorer on both.
    fn open_level(&mut self, w: usize) -> Result<(), ComposedError> {
        debug_assert_eq!(self.levels.len() + 1, w);
        let fr = local_first_round(w)
            .map_err(|e| ComposedError::LocalColoringFailed { level: w, source: e })?;
        let bottoms: BTreeSet<PointId> = (1..=w).map(bottom).collect();
        let tops: BTreeSet<PointId> = (1..=w).map(top).collect();
        let bottom_vec: Vec<PointId> = bottoms.iter().copied().collect();
        let top_vec: Vec<PointId> = tops.iter().copied().collect();
        let lower_copies = self.alloc_copies(w);
        let upper_copies = self.alloc_copies(w);

        let mut chi_board = Multicoloring::new();
        let mut chi_level = BTreeMap::new();
        for k in 0..w {
            chi_board.insert(lower_copies[k], fr.lower[k].clone());
            chi_level.insert(bottom_vec[k], fr.lower[k].clone());
            chi_board.insert(upper_copies[k], fr.upper[k].clone());
            chi_level.insert(top_vec[k], fr.upper[k].clone());
        }
        let edges: BTreeSet<(PointId, PointId)> = lower_copies
            .iter()
            .flat_map(|&l| upper_copies.iter().map(move |&t| (l, t)))
            .collect();
        let order = RegularBipartite::new(
            lower_copies.iter().copied(),
            upper_copies.iter().copied(),
            edges,
        )
        .expect("fresh copies form two disjoint levels");
        let board = LocalBoard::new(order, chi_board)
            .expect("the opening board is complete and chain-colored");

        let mut points = if w >= 2 {
            self.levels[w - 2].points.clone()
        } else {
            BTreeSet::new()
        };
        points.extend(bottoms.iter().copied());
        points.extend(tops.iter().copied());
        self.levels.push(Level {
            points,
            antichains: vec![bottoms, tops],
            boards: vec![PairBoard {
                board,
                lower_real: bottom_vec,
                upper_real: top_vec,
            }],
            chi: chi_level,
            palette: fr.palette,
        });
        Ok(())
    }

    /// Splits board `d` of level `i0` with a middle copy of `a_x`, colors
    /// the middle with the local colorer, installs the two successor boards,
    /// extends the level coloring to first-time tower members, and returns
    /// the smallest color of the arrival `x`.
    fn split_pair(
        &mut self,
        i0: usize,
        d: usize,
        a_x: &BTreeSet<PointId>,
        x: PointId,
    ) -> Result<ColorId, ComposedError> {
        let ax_vec: Vec<PointId> = a_x.iter().copied().collect();
        let mids = self.alloc_copies(i0);

        #[cfg(debug_assertions)]
        {
            // Members new to this level's tower must be new to the whole
            // tower, or the level coloring would be assigned twice.
            let level = &self.levels[i0 - 1];
            let tower: BTreeSet<PointId> = level.antichains.iter().flatten().copied().collect();
            let a_d = &level.antichains[d];
            let a_u = &level.antichains[d + 1];
            for &m in a_x {
                if !a_d.contains(&m) && !a_u.contains(&m) {
                    debug_assert!(
                        !tower.contains(&m),
                        "a member may re-enter a tower only through a neighbouring antichain"
                    );
                }
            }
        }

        let (lm_core, mt_core) = {
            let pb = &self.levels[i0 - 1].boards[d];
            let lm = self
                .lifted_core(&pb.lower_real, pb.board.lower(), &ax_vec, &mids)
                .expect("neighbouring maximum antichains always admit a perfect matching");
            let mt = self
                .lifted_core(&ax_vec, &mids, &pb.upper_real, pb.board.upper())
                .expect("neighbouring maximum antichains always admit a perfect matching");
            (lm, mt)
        };
        let mv = LocalMove {
            middle: mids.iter().copied().collect(),
            edges_lm: lm_core.edges().clone(),
            edges_mt: mt_core.edges().clone(),
        };
        #[cfg(debug_assertions)]
        {
            let board = &self.levels[i0 - 1].boards[d].board;
            if let Err(e) = game_engine::validate_local_move(board, &mv, 0) {
                panic!("the reduction built an illegal local move: {e}");
            }
        }
        let chi_m = local_round(&self.levels[i0 - 1].boards[d].board, &mv)
            .map_err(|e| ComposedError::LocalColoringFailed { level: i0, source: e })?;

        let level = &mut self.levels[i0 - 1];
        let old = level.boards.remove(d);
        let lower_board = old
            .board
            .successor(&mv, &chi_m, KeepSide::Lower)
            .expect("a legal round leaves a valid lower board");
        let upper_board = old
            .board
            .successor(&mv, &chi_m, KeepSide::Upper)
            .expect("a legal round leaves a valid upper board");
        level.boards.insert(
            d,
            PairBoard {
                board: lower_board,
                lower_real: old.lower_real,
                upper_real: ax_vec.clone(),
            },
        );
        level.boards.insert(
            d + 1,
            PairBoard {
                board: upper_board,
                lower_real: ax_vec.clone(),
                upper_real: old.upper_real,
            },
        );
        level.antichains.insert(d + 1, a_x.clone());

        for (k, &member) in ax_vec.iter().enumerate() {
            let colors = chi_m
                .get(&mids[k])
                .expect("every middle copy is colored")
                .clone();
            match level.chi.get(&member) {
                Some(existing) => debug_assert!(
                    colors.is_subset(existing),
                    "a returning member may only repeat its level colors"
                ),
                None => {
                    level.chi.insert(member, colors);
                }
            }
        }
        let x_colors = level
            .chi
            .get(&x)
            .expect("the arrival always joins the squeezed antichain");
        Ok(*x_colors.first().expect("color sets are nonempty"))
    }
}

/// [`Partitioner`] wrapper around [`ReductionState`]: the composed width ≤ 3
/// strategy, ready for the game referees. Chain keys encode the
/// `(level, color)` pair; the referee renumbers them densely.
#[derive(Clone, Debug, Default)]
pub struct ComposedW3 {
    state: ReductionState,
}

impl ComposedW3 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&self) -> &ReductionState {
        &self.state
    }

    pub fn into_state(self) -> ReductionState {
        self.state
    }
}

impl Partitioner for ComposedW3 {
    fn assign(&mut self, poset: &Poset, arrival: &Arrival) -> Result<usize, StrategyError> {
        debug_assert_eq!(poset.len(), self.state.poset.len() + 1);
        let (level, color) = self
            .state
            .insert(arrival.id, &arrival.down_set)
            .map_err(|e| StrategyError(e.to_string()))?;
        Ok(level * 100 + color.0 as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Inserts arrivals one by one, re-verifying the full invariant after
    /// each, and returns the assigned `(level, color)` chains.
    fn insert_all(state: &mut ReductionState, arrivals: &[(i64, &[i64])]) -> Vec<(usize, ColorId)> {
        arrivals
            .iter()
            .map(|&(id, preds)| {
                let down: BTreeSet<PointId> = preds.iter().copied().map(PointId).collect();
                let chain = state.insert(PointId(id), &down).expect("legal arrival");
                verify_reduction(state).expect("invariant after arrival");
                chain
            })
            .collect()
    }

    #[test]
    fn empty_state_verifies() {
        verify_reduction(&ReductionState::new()).unwrap();
    }

    #[test]
    fn a_chain_shares_one_chain() {
        let mut state = ReductionState::new();
        let chains = insert_all(&mut state, &[(0, &[]), (1, &[0]), (2, &[1])]);
        assert_eq!(state.width(), 1);
        assert!(chains.iter().all(|&c| c == chains[0]));
        assert_eq!(chains[0].0, 1);
    }

    #[test]
    fn an_antichain_opens_one_level_per_point() {
        let mut state = ReductionState::new();
        let chains = insert_all(&mut state, &[(7, &[]), (5, &[]), (9, &[])]);
        assert_eq!(state.width(), 3);
        assert_eq!(
            chains.iter().map(|&(lvl, _)| lvl).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert_eq!(state.chain_of(PointId(5)), Some(chains[1]));
    }

    #[test]
    fn a_point_can_join_a_lower_level_late() {
        // Two incomparable points, then one above both: the third point
        // does not bump level 1, so it joins the level-1 tower and reuses
        // the single level-1 color.
        let mut state = ReductionState::new();
        let chains = insert_all(&mut state, &[(0, &[]), (1, &[]), (2, &[0, 1])]);
        assert_eq!(state.width(), 2);
        assert_eq!(chains[2].0, 1);
        assert_eq!(chains[2], chains[0]);
    }

    #[test]
    fn width_four_is_rejected() {
        let mut state = ReductionState::new();
        insert_all(&mut state, &[(0, &[]), (1, &[]), (2, &[])]);
        let err = state.insert(PointId(3), &BTreeSet::new()).unwrap_err();
        assert_eq!(err, ComposedError::WidthTooLarge(4));
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let mut state = ReductionState::new();
        insert_all(&mut state, &[(0, &[])]);
        assert!(matches!(
            state.insert(PointId(0), &BTreeSet::new()),
            Err(ComposedError::InvalidArrival(_))
        ));
    }

    #[test]
    fn chain_bound_follows_the_palettes() {
        assert_eq!(composed_chain_bound(0), Some(0));
        assert_eq!(composed_chain_bound(1), Some(1));
        assert_eq!(composed_chain_bound(2), Some(5));
        assert_eq!(composed_chain_bound(3), Some(16));
        assert_eq!(composed_chain_bound(4), None);
    }

    #[test]
    fn interleaved_fences_keep_the_invariant() {
        // A fence (zig-zag) of width 2 presented in mixed order, followed
        // by top points that re-enter lower levels.
        let mut state = ReductionState::new();
        let chains = insert_all(
            &mut state,
            &[
                (0, &[]),
                (1, &[]),
                (2, &[0, 1]),
                (3, &[1]),
                (4, &[0, 1, 2, 3]),
                (5, &[0, 1, 2, 3, 4]),
            ],
        );
        assert_eq!(state.width(), 2);
        let distinct: BTreeSet<_> = chains.iter().copied().collect();
        assert!(distinct.len() <= 5);
    }
}
