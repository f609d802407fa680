//! The Algorithm side of the core-disjoint local coloring game, complete
//! for level sizes 1–3.
//!
//! [`local_first_round`] emits the fixed opening palettes: 1, 4 and 11
//! colors for widths 1, 2 and 3. [`local_round`] answers a legal Spoiler
//! move with a multicoloring of the middle antichain, chosen by case
//! analysis on the pair of core shapes `(L, M, ≺)` and `(M, T, ≺)`. The
//! coloring is always legal, never grows the palette, and keeps the
//! working invariant checked by [`verify_width3_invariant`] on whichever
//! side the Spoiler decides to keep:
//!
//! 1. every edge of the (core) level relation has a *private* color —
//!    one whose entire class is that edge — and
//! 2. a complete width-3 board carries exactly two *spare* shared colors,
//!    riding on two disjoint edges, so those edges own two privates each.
//!
//! The spares are what make complete width-3 boards survivable: whenever
//! the kept side is again complete, the round re-seats them on a perfect
//! matching of it, so the doubled edges never run dry.

use std::collections::BTreeMap;

use game_engine::{
    ColorId, ColorSet, LocalBoard, LocalColorer, LocalMove, Multicoloring, StrategyError,
};
use itertools::Itertools;
use poset_core::{classify_core, CoreTag, PointId, RegularBipartite};

use crate::error::LocalAlgError;

/// The opening multicoloring of the two complete levels, positional: entry
/// `k` of `lower`/`upper` colors the `k`-th point of the respective level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstRound {
    /// Every color the strategy will ever use at this width.
    pub palette: ColorSet,
    pub lower: Vec<ColorSet>,
    pub upper: Vec<ColorSet>,
}

/// The fixed opening palettes: `w²` grid colors — color `w(i−1)+j` joins
/// lower point `j` and upper point `i` — plus, at width 3, two spare
/// colors `10` and `11` riding the disjoint edges `(l₁, t₁)` and
/// `(l₂, t₂)`. Palette sizes are 1, 4 and 11; widths above 3 are refused.
pub fn local_first_round(w: usize) -> Result<FirstRound, LocalAlgError> {
    if !(1..=3).contains(&w) {
        return Err(LocalAlgError::WidthTooLarge(w));
    }
    let grid = |i: usize, j: usize| ColorId((w * (i - 1) + j) as u32);
    let mut lower: Vec<ColorSet> = (1..=w)
        .map(|j| (1..=w).map(|i| grid(i, j)).collect())
        .collect();
    let mut upper: Vec<ColorSet> = (1..=w)
        .map(|i| (1..=w).map(|j| grid(i, j)).collect())
        .collect();
    if w == 3 {
        for (k, spare) in [10u32, 11].into_iter().enumerate() {
            lower[k].insert(ColorId(spare));
            upper[k].insert(ColorId(spare));
        }
    }
    let palette: ColorSet = lower.iter().flatten().copied().collect();
    Ok(FirstRound {
        palette,
        lower,
        upper,
    })
}

/// Checks the working invariant of the strategy on a board:
///
/// 1. every edge has at least one private color, and
/// 2. if the board is complete and of width 3, it shares exactly 11
///    colors and the two beyond the nine selected privates sit on two
///    disjoint edges (each then owning exactly two privates).
///
/// Boards of width ≤ 2, and incomplete width-3 boards, are only held to
/// clause 1.
pub fn verify_width3_invariant(board: &LocalBoard) -> Result<(), String> {
    let mut doubled: Vec<(PointId, PointId, usize)> = Vec::new();
    for &(l, t) in board.order().edges() {
        let privates = board.private_colors(l, t);
        if privates.is_empty() {
            return Err(format!("edge ({l}, {t}) has no private color"));
        }
        if privates.len() > 1 {
            doubled.push((l, t, privates.len()));
        }
    }
    if board.width() == 3 && board.is_complete() {
        let shared = board.shared_colors().len();
        if shared != 11 {
            return Err(format!(
                "complete width-3 board shares {shared} colors, expected 11"
            ));
        }
        match doubled.as_slice() {
            [(l1, t1, 2), (l2, t2, 2)] if l1 != l2 && t1 != t2 => {}
            other => {
                return Err(format!(
                    "complete width-3 board needs its two spare colors on two \
                     disjoint edges; doubled edges: {other:?}"
                ))
            }
        }
    }
    Ok(())
}

/// What a round reads off the current board before coloring: the
/// *selected* private color of every edge (the smallest) and the *spare*
/// shared colors — privates beyond the first — keyed by their host edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalColorState {
    selected: BTreeMap<(PointId, PointId), ColorId>,
    spares: Vec<(ColorId, (PointId, PointId))>,
}

impl LocalColorState {
    /// Reads the selection off a board. Fails if some edge has no private
    /// color, since every coloring this module emits relies on one.
    pub fn derive(board: &LocalBoard) -> Result<Self, LocalAlgError> {
        let mut selected = BTreeMap::new();
        let mut spares = Vec::new();
        for &(l, t) in board.order().edges() {
            let privates = board.private_colors(l, t);
            let mut privates = privates.into_iter();
            let Some(first) = privates.next() else {
                return Err(unmatched(format!(
                    "board edge ({l}, {t}) carries no private color"
                )));
            };
            selected.insert((l, t), first);
            spares.extend(privates.map(|c| (c, (l, t))));
        }
        spares.sort();
        Ok(Self { selected, spares })
    }

    /// The selected private color of the board edge `(l, t)`.
    pub fn selected(&self, l: PointId, t: PointId) -> Option<ColorId> {
        self.selected.get(&(l, t)).copied()
    }

    /// The spare colors with their host edges, in color order.
    pub fn spares(&self) -> &[(ColorId, (PointId, PointId))] {
        &self.spares
    }
}

/// Multicolors the middle antichain of a legal Spoiler move so that both
/// candidate successor boards satisfy [`verify_width3_invariant`]. The
/// move must already have passed `validate_local_move`; the board width
/// must be at most 3.
pub fn local_round(board: &LocalBoard, mv: &LocalMove) -> Result<Multicoloring, LocalAlgError> {
    let w = board.width();
    if w > 3 {
        return Err(LocalAlgError::WidthTooLarge(w));
    }
    let (lm, mt) = move_relations(board, mv)?;
    let tag_lm = shape_of(&lm, "(L, M)")?;
    let tag_mt = shape_of(&mt, "(M, T)")?;
    // Only shape pairs with the lower shape no richer than the upper one
    // are handled directly; the rest are their mirror images.
    if tag_lm > tag_mt {
        let (flipped_board, flipped_mv) = flipped(board, mv)?;
        return local_round(&flipped_board, &flipped_mv);
    }
    let state = LocalColorState::derive(board)?;
    log::debug!("local round: shapes ({tag_lm}, {tag_mt})");
    let chi = match (tag_lm, tag_mt) {
        (CoreTag::P1 | CoreTag::P11 | CoreTag::P111, _) => {
            matched_lower(&state, &lm, &mt, tag_mt)
        }
        (CoreTag::P22, CoreTag::P22) => both_complete_width2(&state, &lm, &mt),
        (CoreTag::P122, _) => lower_122(&state, &lm, &mt, tag_mt),
        (CoreTag::P222, _) => lower_222(&state, &lm, &mt, tag_mt),
        (CoreTag::P223, _) => lower_223(&state, &lm, &mt, tag_mt),
        (CoreTag::P233, _) => lower_233(&state, &lm, &mt, tag_mt),
        (CoreTag::P333, CoreTag::P333) => both_complete_width3(&state, &lm, &mt),
        pair => Err(unmatched(format!("no case covers the shape pair {pair:?}"))),
    }?;
    #[cfg(debug_assertions)]
    self_check(board, mv, &chi);
    Ok(chi)
}

/// In debug builds, replay the legality checks and the invariant on both
/// candidate successors; a failure here is a bug in the case analysis.
#[cfg(debug_assertions)]
fn self_check(board: &LocalBoard, mv: &LocalMove, chi: &Multicoloring) {
    use game_engine::KeepSide;
    if let Err(e) = game_engine::validate_local_coloring(board, mv, chi, 0) {
        panic!("local round produced an illegal coloring: {e}");
    }
    for side in [KeepSide::Lower, KeepSide::Upper] {
        let next = board
            .successor(mv, chi, side)
            .expect("legal round has both successors");
        if let Err(e) = verify_width3_invariant(&next) {
            panic!("local round broke the invariant on the {side:?} successor: {e}");
        }
    }
}

/// The stateless [`LocalColorer`] built on [`local_first_round`] and
/// [`local_round`]: everything a round needs is re-derived from the board.
#[derive(Copy, Clone, Debug, Default)]
pub struct LocalCoreDisjoint;

impl LocalCoreDisjoint {
    pub fn new() -> Self {
        Self
    }
}

impl LocalColorer for LocalCoreDisjoint {
    fn first_round(
        &mut self,
        lower: &[PointId],
        upper: &[PointId],
    ) -> Result<Multicoloring, StrategyError> {
        if lower.len() != upper.len() {
            return Err(StrategyError("levels differ in size".into()));
        }
        let opening = local_first_round(lower.len()).map_err(|e| StrategyError(e.to_string()))?;
        let mut chi = Multicoloring::new();
        for (&p, colors) in lower.iter().zip(opening.lower) {
            chi.insert(p, colors);
        }
        for (&p, colors) in upper.iter().zip(opening.upper) {
            chi.insert(p, colors);
        }
        Ok(chi)
    }

    fn round(
        &mut self,
        board: &LocalBoard,
        mv: &LocalMove,
    ) -> Result<Multicoloring, StrategyError> {
        local_round(board, mv).map_err(|e| StrategyError(e.to_string()))
    }
}

fn unmatched(msg: impl Into<String>) -> LocalAlgError {
    LocalAlgError::UnmatchedCase(msg.into())
}

/// The two level relations of a move as bipartite posets.
fn move_relations(
    board: &LocalBoard,
    mv: &LocalMove,
) -> Result<(RegularBipartite, RegularBipartite), LocalAlgError> {
    let lm = RegularBipartite::new(
        board.lower().iter().copied(),
        mv.middle.iter().copied(),
        mv.edges_lm.iter().copied(),
    )
    .map_err(|e| unmatched(format!("malformed (L, M) relation: {e}")))?;
    let mt = RegularBipartite::new(
        mv.middle.iter().copied(),
        board.upper().iter().copied(),
        mv.edges_mt.iter().copied(),
    )
    .map_err(|e| unmatched(format!("malformed (M, T) relation: {e}")))?;
    Ok((lm, mt))
}

fn shape_of(relation: &RegularBipartite, name: &str) -> Result<CoreTag, LocalAlgError> {
    classify_core(relation)
        .map(|class| class.tag)
        .map_err(|e| unmatched(format!("the {name} relation does not classify: {e}")))
}

/// The mirror image of a position: levels swapped and all edges reversed.
/// A multicoloring of the middle is legal for the mirror iff it is legal
/// for the original, and the invariant is symmetric, so the mirrored
/// answer is returned unchanged.
fn flipped(board: &LocalBoard, mv: &LocalMove) -> Result<(LocalBoard, LocalMove), LocalAlgError> {
    let order = RegularBipartite::new(
        board.upper().iter().copied(),
        board.lower().iter().copied(),
        board.order().edges().iter().map(|&(l, t)| (t, l)),
    )
    .map_err(|e| unmatched(format!("mirrored board is malformed: {e}")))?;
    let flipped_board = LocalBoard::new(order, board.chi().clone())
        .map_err(|e| unmatched(format!("mirrored board is invalid: {e}")))?;
    let flipped_mv = LocalMove {
        middle: mv.middle.clone(),
        edges_lm: mv.edges_mt.iter().map(|&(m, t)| (t, m)).collect(),
        edges_mt: mv.edges_lm.iter().map(|&(l, m)| (m, l)).collect(),
    };
    Ok((flipped_board, flipped_mv))
}

/// A role assignment: `l[j]`, `m[j]`, `t[j]` are the actual points playing
/// the 0-indexed lower, middle and upper roles of a case.
#[derive(Clone, Debug)]
struct Cast {
    l: Vec<PointId>,
    m: Vec<PointId>,
    t: Vec<PointId>,
}

/// All casts aligning the move with the given role shapes, in
/// lexicographic order of the underlying permutations. With `mt_shape`
/// `None` (used when `(M, T)` is complete, hence invariant under
/// relabeling) upper roles follow the sorted point order.
fn find_casts(
    lm: &RegularBipartite,
    mt: &RegularBipartite,
    lm_shape: &[(usize, usize)],
    mt_shape: Option<&[(usize, usize)]>,
) -> Vec<Cast> {
    let w = lm.width();
    let lows = lm.lower();
    let mids = lm.upper();
    let ups = mt.upper();
    let mut casts = Vec::new();
    for lp in (0..w).permutations(w) {
        for mp in (0..w).permutations(w) {
            let mapped: std::collections::BTreeSet<(PointId, PointId)> = lm_shape
                .iter()
                .map(|&(a, b)| (lows[lp[a]], mids[mp[b]]))
                .collect();
            if &mapped != lm.edges() {
                continue;
            }
            let l: Vec<PointId> = lp.iter().map(|&k| lows[k]).collect();
            let m: Vec<PointId> = mp.iter().map(|&k| mids[k]).collect();
            match mt_shape {
                None => casts.push(Cast {
                    l,
                    m,
                    t: ups.to_vec(),
                }),
                Some(shape) => {
                    for tp in (0..w).permutations(w) {
                        let mapped: std::collections::BTreeSet<(PointId, PointId)> = shape
                            .iter()
                            .map(|&(a, b)| (m[a], ups[tp[b]]))
                            .collect();
                        if &mapped == mt.edges() {
                            casts.push(Cast {
                                l: l.clone(),
                                m: m.clone(),
                                t: tp.iter().map(|&k| ups[k]).collect(),
                            });
                        }
                    }
                }
            }
        }
    }
    casts
}

/// The first cast aligning the move with the given shapes.
fn cast_for(
    lm: &RegularBipartite,
    mt: &RegularBipartite,
    lm_shape: &[(usize, usize)],
    mt_shape: Option<&[(usize, usize)]>,
) -> Result<Cast, LocalAlgError> {
    let casts = find_casts(lm, mt, lm_shape, mt_shape);
    if casts.len() > 1 {
        log::debug!(
            "local round: {} equivalent role casts; using the first",
            casts.len()
        );
    }
    casts
        .into_iter()
        .next()
        .ok_or_else(|| unmatched("no role cast aligns the move with its case"))
}

/// The selected private color of the board edge `(l_j, t_i)`, with `i`
/// and `j` the 1-based upper and lower role indices of a cast.
fn gamma(
    state: &LocalColorState,
    cast: &Cast,
    i: usize,
    j: usize,
) -> Result<ColorId, LocalAlgError> {
    let (l, t) = (cast.l[j - 1], cast.t[i - 1]);
    state
        .selected(l, t)
        .ok_or_else(|| unmatched(format!("({l}, {t}) is not a board edge with a private color")))
}

/// Colors middle role `k` with the selected privates named by `spec[k]`,
/// each entry an `(i, j)` pair as in [`gamma`].
fn paint(
    state: &LocalColorState,
    cast: &Cast,
    spec: &[&[(usize, usize)]],
) -> Result<Multicoloring, LocalAlgError> {
    let mut chi = Multicoloring::new();
    for (k, entries) in spec.iter().enumerate() {
        let colors: ColorSet = entries
            .iter()
            .map(|&(i, j)| gamma(state, cast, i, j))
            .collect::<Result<_, _>>()?;
        chi.insert(cast.m[k], colors);
    }
    Ok(chi)
}

/// The lexicographically first perfect matching of a core.
fn lex_matching(relation: &RegularBipartite) -> Option<Vec<(PointId, PointId)>> {
    fn go(
        relation: &RegularBipartite,
        i: usize,
        used: &mut [bool],
        acc: &mut Vec<(PointId, PointId)>,
    ) -> bool {
        if i == relation.width() {
            return true;
        }
        let l = relation.lower()[i];
        for (j, &t) in relation.upper().iter().enumerate() {
            if !used[j] && relation.has_edge(l, t) {
                used[j] = true;
                acc.push((l, t));
                if go(relation, i + 1, used, acc) {
                    return true;
                }
                acc.pop();
                used[j] = false;
            }
        }
        false
    }
    let mut used = vec![false; relation.width()];
    let mut acc = Vec::with_capacity(relation.width());
    go(relation, 0, &mut used, &mut acc).then_some(acc)
}

/// Re-seats the two spare colors when `(M, T)` — and possibly `(L, M)` —
/// is complete. Each spare joins the matching partner of its host: with
/// `(L, M)` complete, the `(M, T)`-matching partner of the host's upper
/// point; otherwise the `(L, M)`-matching partner of the host's lower
/// point. Either way the spare's class stays a chain through the middle,
/// and the kept complete side regains two disjoint doubled edges.
fn reseat_spares(
    chi: &mut Multicoloring,
    state: &LocalColorState,
    lm: &RegularBipartite,
    mt: &RegularBipartite,
    lower_complete: bool,
) -> Result<(), LocalAlgError> {
    let spares = state.spares();
    if spares.len() != 2 {
        return Err(unmatched(format!(
            "complete board carries {} spare colors, expected 2",
            spares.len()
        )));
    }
    let matching = lex_matching(if lower_complete { mt } else { lm })
        .ok_or_else(|| unmatched("level relation has no perfect matching"))?;
    for &(color, (host_l, host_t)) in spares {
        let middle = if lower_complete {
            matching
                .iter()
                .find(|&&(_, t)| t == host_t)
                .map(|&(m, _)| m)
        } else {
            matching
                .iter()
                .find(|&&(l, _)| l == host_l)
                .map(|&(_, m)| m)
        };
        let middle = middle.ok_or_else(|| unmatched("spare host missing from the matching"))?;
        chi.entry(middle).or_default().insert(color);
    }
    Ok(())
}

/// `(L, M)` is a perfect matching (shapes `P1`, `P11`, `P111`): with `m_k`
/// the partner of `l_k`, color `m_k` by every selected private `γ(i, k)`
/// of an upper role `t_i` above it. Classes stay chains `l_k < m_k < t_i`,
/// the sets are disjoint by their lower index, and every edge of either
/// new relation keeps a private.
fn matched_lower(
    state: &LocalColorState,
    lm: &RegularBipartite,
    mt: &RegularBipartite,
    tag_mt: CoreTag,
) -> Result<Multicoloring, LocalAlgError> {
    let l: Vec<PointId> = lm.lower().to_vec();
    let m: Vec<PointId> = l
        .iter()
        .map(|&lk| {
            lm.edges()
                .iter()
                .find(|&&(a, _)| a == lk)
                .map(|&(_, b)| b)
                .ok_or_else(|| unmatched(format!("{lk} has no partner in the matching")))
        })
        .collect::<Result<_, _>>()?;
    let cast = Cast {
        l,
        m,
        t: mt.upper().to_vec(),
    };
    let w = lm.width();
    let mut chi = Multicoloring::new();
    for k in 1..=w {
        let colors: ColorSet = (1..=w)
            .filter(|&i| mt.has_edge(cast.m[k - 1], cast.t[i - 1]))
            .map(|i| gamma(state, &cast, i, k))
            .collect::<Result<_, _>>()?;
        chi.insert(cast.m[k - 1], colors);
    }
    if tag_mt == CoreTag::P333 {
        reseat_spares(&mut chi, state, lm, mt, false)?;
    }
    Ok(chi)
}

/// Both width-2 relations complete: cross the selected privates so that
/// all eight new edges keep one.
fn both_complete_width2(
    state: &LocalColorState,
    lm: &RegularBipartite,
    mt: &RegularBipartite,
) -> Result<Multicoloring, LocalAlgError> {
    let cast = Cast {
        l: lm.lower().to_vec(),
        m: lm.upper().to_vec(),
        t: mt.upper().to_vec(),
    };
    paint(state, &cast, &[&[(1, 2), (2, 1)], &[(1, 1), (2, 2)]])
}

/// Both width-3 relations complete: a Latin-square spread of the nine
/// selected privates — every edge of either relation keeps exactly one —
/// then the spares are re-seated on an `(M, T)` matching.
fn both_complete_width3(
    state: &LocalColorState,
    lm: &RegularBipartite,
    mt: &RegularBipartite,
) -> Result<Multicoloring, LocalAlgError> {
    let cast = Cast {
        l: lm.lower().to_vec(),
        m: lm.upper().to_vec(),
        t: mt.upper().to_vec(),
    };
    let mut chi = paint(
        state,
        &cast,
        &[
            &[(1, 1), (2, 2), (3, 3)],
            &[(2, 1), (3, 2), (1, 3)],
            &[(3, 1), (1, 2), (2, 3)],
        ],
    )?;
    reseat_spares(&mut chi, state, lm, mt, true)?;
    Ok(chi)
}

/// `(L, M)` has the 1+4 shape `P122`: `l₁ < m₁` and `l₂, l₃ < m₂, m₃`.
///
/// If some upper role covers both `m₂` and `m₃` (always true unless
/// `(M, T)` is `P111` or `P122` with the split landing on them), arrange a
/// diagonal matching `m_k < t_k`, pick the smallest common cover `t_s`,
/// and exchange the roles of `γ(s, 2)` and `γ(s, 3)`: the crossed pair
/// hands the edges `l₂ ≺ m₃` and `l₃ ≺ m₂` their privates. Otherwise
/// `m₁, m₂ < t₁, t₂` and `m₃ < t₃` split off, and a fixed template
/// applies.
fn lower_122(
    state: &LocalColorState,
    lm: &RegularBipartite,
    mt: &RegularBipartite,
    tag_mt: CoreTag,
) -> Result<Multicoloring, LocalAlgError> {
    const SPLIT_MT: &[(usize, usize)] = &[(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)];
    let lm_shape = CoreTag::P122.canonical_edges();
    let w = 3;
    let mut best: Option<(Cast, usize)> = None;
    let mut hits = 0usize;
    for base in find_casts(lm, mt, lm_shape, None) {
        let ups = base.t.clone();
        for tp in (0..w).permutations(w) {
            let t: Vec<PointId> = tp.iter().map(|&k| ups[k]).collect();
            if !(0..w).all(|k| mt.has_edge(base.m[k], t[k])) {
                continue;
            }
            let common = (1..=w)
                .find(|&i| mt.has_edge(base.m[1], t[i - 1]) && mt.has_edge(base.m[2], t[i - 1]));
            let Some(s) = common else { continue };
            hits += 1;
            if best.is_none() {
                best = Some((
                    Cast {
                        l: base.l.clone(),
                        m: base.m.clone(),
                        t,
                    },
                    s,
                ));
            }
        }
    }
    let Some((cast, s)) = best else {
        // No common cover: the split arrangement.
        let cast = cast_for(lm, mt, lm_shape, Some(SPLIT_MT))?;
        return paint(
            state,
            &cast,
            &[&[(1, 1), (2, 1)], &[(1, 2), (2, 3)], &[(3, 2), (3, 3)]],
        );
    };
    if hits > 1 {
        log::debug!("local round: {hits} equivalent diagonal casts; using the first");
    }
    let mut chi = Multicoloring::new();
    let covered = |k: usize, i: usize| mt.has_edge(cast.m[k - 1], cast.t[i - 1]);
    let mut m1 = ColorSet::new();
    for i in (1..=w).filter(|&i| covered(1, i)) {
        m1.insert(gamma(state, &cast, i, 1)?);
    }
    let mut m2 = ColorSet::new();
    for i in (1..=w).filter(|&i| i != s && covered(2, i)) {
        m2.insert(gamma(state, &cast, i, 2)?);
    }
    m2.insert(gamma(state, &cast, s, 3)?);
    let mut m3 = ColorSet::new();
    for i in (1..=w).filter(|&i| i != s && covered(3, i)) {
        m3.insert(gamma(state, &cast, i, 3)?);
    }
    m3.insert(gamma(state, &cast, s, 2)?);
    chi.insert(cast.m[0], m1);
    chi.insert(cast.m[1], m2);
    chi.insert(cast.m[2], m3);
    if tag_mt == CoreTag::P333 {
        reseat_spares(&mut chi, state, lm, mt, false)?;
    }
    Ok(chi)
}

/// `(L, M)` is the hexagon `P222`: `l₁ < m₁, m₂`; `l₂ < m₁, m₃`;
/// `l₃ < m₂, m₃`. One fixed template per upper shape.
fn lower_222(
    state: &LocalColorState,
    lm: &RegularBipartite,
    mt: &RegularBipartite,
    tag_mt: CoreTag,
) -> Result<Multicoloring, LocalAlgError> {
    let lm_shape = CoreTag::P222.canonical_edges();
    match tag_mt {
        // m₁ < t₁, t₂; m₂ < t₁, t₃; m₃ < t₂, t₃
        CoreTag::P222 => {
            let cast = cast_for(lm, mt, lm_shape, Some(CoreTag::P222.canonical_edges()))?;
            paint(
                state,
                &cast,
                &[&[(1, 1), (2, 2)], &[(3, 1), (1, 3)], &[(2, 3), (3, 2)]],
            )
        }
        // m₁ < t₁, t₂; m₂ < T; m₃ < t₂, t₃
        CoreTag::P223 => {
            let cast = cast_for(lm, mt, lm_shape, Some(CoreTag::P223.canonical_edges()))?;
            paint(
                state,
                &cast,
                &[
                    &[(1, 1), (2, 2)],
                    &[(3, 1), (2, 1), (1, 3)],
                    &[(2, 3), (3, 2)],
                ],
            )
        }
        // m₁, m₂ < T; m₃ < t₂, t₃
        CoreTag::P233 => {
            let cast = cast_for(lm, mt, lm_shape, Some(CoreTag::P233.canonical_edges()))?;
            paint(
                state,
                &cast,
                &[
                    &[(1, 1), (3, 1), (2, 2)],
                    &[(2, 1), (1, 3), (3, 3)],
                    &[(3, 2), (2, 3)],
                ],
            )
        }
        CoreTag::P333 => {
            let cast = cast_for(lm, mt, lm_shape, None)?;
            let mut chi = paint(
                state,
                &cast,
                &[
                    &[(2, 1), (3, 1), (1, 2)],
                    &[(1, 1), (2, 3), (3, 3)],
                    &[(2, 2), (3, 2), (1, 3)],
                ],
            )?;
            reseat_spares(&mut chi, state, lm, mt, false)?;
            Ok(chi)
        }
        other => Err(unmatched(format!("P222 lower against {other}"))),
    }
}

/// `(L, M)` has shape `P223`: `l₁, l₂ < m₁`; `L < m₂`; `l₂, l₃ < m₃`.
fn lower_223(
    state: &LocalColorState,
    lm: &RegularBipartite,
    mt: &RegularBipartite,
    tag_mt: CoreTag,
) -> Result<Multicoloring, LocalAlgError> {
    // m₁ < T; m₂ < t₁, t₃; m₃ < t₂, t₃
    const TOP_HEAVY_MT: &[(usize, usize)] = &[
        (0, 0),
        (0, 1),
        (0, 2),
        (1, 0),
        (1, 2),
        (2, 1),
        (2, 2),
    ];
    // m₁, m₃ < T; m₂ < t₁, t₃
    const MIDDLE_GAP_MT: &[(usize, usize)] = &[
        (0, 0),
        (0, 1),
        (0, 2),
        (1, 0),
        (1, 2),
        (2, 0),
        (2, 1),
        (2, 2),
    ];
    let lm_shape = CoreTag::P223.canonical_edges();
    match tag_mt {
        CoreTag::P223 => {
            // The T-complete middle is either the L-complete m₂ …
            let casts = find_casts(lm, mt, lm_shape, Some(CoreTag::P223.canonical_edges()));
            if let Some(cast) = casts.into_iter().next() {
                return paint(
                    state,
                    &cast,
                    &[
                        &[(1, 1), (2, 2)],
                        &[(2, 1), (1, 2), (3, 3)],
                        &[(3, 2), (2, 3)],
                    ],
                );
            }
            // … or a side middle, arranged to be m₁.
            let cast = cast_for(lm, mt, lm_shape, Some(TOP_HEAVY_MT))?;
            paint(
                state,
                &cast,
                &[
                    &[(2, 1), (3, 1), (1, 2)],
                    &[(1, 1), (3, 2), (1, 3)],
                    &[(2, 2), (3, 3)],
                ],
            )
        }
        CoreTag::P233 => {
            // The doubly-covered middle is either a side middle, arranged
            // to be m₃ with covers t₂, t₃ …
            let casts = find_casts(lm, mt, lm_shape, Some(CoreTag::P233.canonical_edges()));
            if let Some(cast) = casts.into_iter().next() {
                return paint(
                    state,
                    &cast,
                    &[
                        &[(2, 1), (3, 1), (1, 2)],
                        &[(1, 1), (3, 2), (2, 3)],
                        &[(2, 2), (3, 3)],
                    ],
                );
            }
            // … or the L-complete m₂, with covers t₁, t₃. The board is
            // then complete, and one spare — called α, hosted on t₁ after
            // renaming — rides along with the selected privates.
            let spares = state.spares();
            if spares.len() != 2 {
                return Err(unmatched(format!(
                    "complete board carries {} spare colors, expected 2",
                    spares.len()
                )));
            }
            let casts = find_casts(lm, mt, lm_shape, Some(MIDDLE_GAP_MT));
            let mut picked = None;
            let mut hits = 0usize;
            for cast in &casts {
                for (alpha, _beta) in [(spares[0], spares[1]), (spares[1], spares[0])] {
                    if (alpha.1).1 == cast.t[0] {
                        hits += 1;
                        if picked.is_none() {
                            picked = Some((cast.clone(), alpha));
                        }
                    }
                }
            }
            if hits > 1 {
                log::debug!("local round: {hits} equivalent spare namings; using the first");
            }
            let Some((cast, alpha)) = picked else {
                return Err(unmatched("no spare color sits on a cover of the gap middle"));
            };
            let (alpha_color, (alpha_l, _)) = alpha;
            let mut chi;
            if alpha_l != cast.l[2] {
                // α misses l₃: it can ride m₁.
                chi = paint(
                    state,
                    &cast,
                    &[
                        &[(3, 1), (2, 2)],
                        &[(1, 1), (3, 2), (1, 3)],
                        &[(1, 2), (2, 3), (3, 3)],
                    ],
                )?;
                chi.entry(cast.m[0]).or_default().insert(alpha_color);
            } else {
                // α sits on l₃: it rides m₃ instead.
                chi = paint(
                    state,
                    &cast,
                    &[
                        &[(2, 1), (3, 1), (1, 2)],
                        &[(1, 1), (3, 2), (1, 3)],
                        &[(2, 2), (3, 3)],
                    ],
                )?;
                chi.entry(cast.m[2]).or_default().insert(alpha_color);
            }
            Ok(chi)
        }
        CoreTag::P333 => {
            let cast = cast_for(lm, mt, lm_shape, None)?;
            let mut chi = paint(
                state,
                &cast,
                &[
                    &[(2, 1), (3, 1), (1, 2)],
                    &[(1, 1), (2, 2), (3, 3)],
                    &[(3, 2), (1, 3), (2, 3)],
                ],
            )?;
            reseat_spares(&mut chi, state, lm, mt, false)?;
            Ok(chi)
        }
        other => Err(unmatched(format!("P223 lower against {other}"))),
    }
}

/// `(L, M)` has shape `P233`: `l₁, l₂ < M`; `l₃ < m₂, m₃`.
fn lower_233(
    state: &LocalColorState,
    lm: &RegularBipartite,
    mt: &RegularBipartite,
    tag_mt: CoreTag,
) -> Result<Multicoloring, LocalAlgError> {
    // m₁ < t₁, t₂; m₂, m₃ < T
    const TOP_GAP_MT: &[(usize, usize)] = &[
        (0, 0),
        (0, 1),
        (1, 0),
        (1, 1),
        (1, 2),
        (2, 0),
        (2, 1),
        (2, 2),
    ];
    let lm_shape = CoreTag::P233.canonical_edges();
    match tag_mt {
        CoreTag::P233 => {
            // The doubly-covered middle is either the one missing from
            // l₃'s covers …
            let casts = find_casts(lm, mt, lm_shape, Some(TOP_GAP_MT));
            if let Some(cast) = casts.into_iter().next() {
                return paint(
                    state,
                    &cast,
                    &[
                        &[(1, 1), (2, 2)],
                        &[(3, 1), (3, 2), (1, 3), (2, 3)],
                        &[(2, 1), (1, 2), (3, 3)],
                    ],
                );
            }
            // … or an L-complete one, arranged to be m₃ with covers
            // t₂, t₃. The board is complete; both spares ride the
            // L- and T-complete m₂, and the casting places spare hosts
            // on l₂ and t₂ so the edges through m₂ keep privates.
            let spares = state.spares();
            if spares.len() != 2 {
                return Err(unmatched(format!(
                    "complete board carries {} spare colors, expected 2",
                    spares.len()
                )));
            }
            let casts = find_casts(lm, mt, lm_shape, Some(CoreTag::P233.canonical_edges()));
            let matching = casts
                .into_iter()
                .filter(|cast| {
                    spares.iter().any(|&(_, (hl, _))| hl == cast.l[1])
                        && spares.iter().any(|&(_, (_, ht))| ht == cast.t[1])
                })
                .collect::<Vec<_>>();
            if matching.len() > 1 {
                log::debug!(
                    "local round: {} equivalent spare-aligned casts; using the first",
                    matching.len()
                );
            }
            let cast = matching
                .into_iter()
                .next()
                .ok_or_else(|| unmatched("no cast aligns the spare hosts with l₂ and t₂"))?;
            let mut chi = paint(
                state,
                &cast,
                &[
                    &[(1, 2), (3, 2), (2, 1)],
                    &[(1, 1), (3, 3)],
                    &[(2, 2), (3, 1), (2, 3)],
                ],
            )?;
            for &(color, _) in spares {
                chi.entry(cast.m[1]).or_default().insert(color);
            }
            Ok(chi)
        }
        CoreTag::P333 => {
            // The board is complete. Name the spare hosted on a fully
            // covering lower point — arranged to be l₂ — α; it rides m₂,
            // and the other spare β rides m₃.
            let spares = state.spares();
            if spares.len() != 2 {
                return Err(unmatched(format!(
                    "complete board carries {} spare colors, expected 2",
                    spares.len()
                )));
            }
            let casts = find_casts(lm, mt, lm_shape, None);
            let mut picked = None;
            let mut hits = 0usize;
            for cast in &casts {
                for (alpha, beta) in [(spares[0], spares[1]), (spares[1], spares[0])] {
                    if (alpha.1).0 == cast.l[1] {
                        hits += 1;
                        if picked.is_none() {
                            picked = Some((cast.clone(), alpha, beta));
                        }
                    }
                }
            }
            if hits > 1 {
                log::debug!("local round: {hits} equivalent spare namings; using the first");
            }
            let Some((cast, alpha, beta)) = picked else {
                return Err(unmatched("no spare color sits on an L-complete lower point"));
            };
            let mut chi = paint(
                state,
                &cast,
                &[
                    &[(3, 1), (1, 2), (2, 2)],
                    &[(2, 1), (1, 3), (3, 3)],
                    &[(1, 1), (3, 2), (2, 3)],
                ],
            )?;
            chi.entry(cast.m[1]).or_default().insert(alpha.0);
            chi.entry(cast.m[2]).or_default().insert(beta.0);
            Ok(chi)
        }
        other => Err(unmatched(format!("P233 lower against {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use game_engine::{validate_local_coloring, validate_local_move, LocalBoard, LocalMove};

    use super::*;

    fn opening_board(w: usize) -> LocalBoard {
        let lower: Vec<PointId> = (1..=w as i64).map(PointId).collect();
        let upper: Vec<PointId> = (w as i64 + 1..=2 * w as i64).map(PointId).collect();
        let edges = lower
            .iter()
            .flat_map(|&l| upper.iter().map(move |&t| (l, t)));
        let order =
            RegularBipartite::new(lower.iter().copied(), upper.iter().copied(), edges).unwrap();
        let opening = local_first_round(w).unwrap();
        let mut chi = Multicoloring::new();
        for (&p, colors) in lower.iter().zip(opening.lower) {
            chi.insert(p, colors);
        }
        for (&p, colors) in upper.iter().zip(opening.upper) {
            chi.insert(p, colors);
        }
        LocalBoard::new(order, chi).unwrap()
    }

    #[test]
    fn opening_palettes_have_sizes_1_4_11() {
        let sets = |w: usize| local_first_round(w).unwrap();
        assert_eq!(sets(1).palette.len(), 1);
        assert_eq!(sets(2).palette.len(), 4);
        assert_eq!(sets(3).palette.len(), 11);
        assert!(matches!(
            local_first_round(4),
            Err(LocalAlgError::WidthTooLarge(4))
        ));

        let w3 = sets(3);
        let set = |xs: &[u32]| xs.iter().copied().map(ColorId).collect::<ColorSet>();
        assert_eq!(w3.lower[0], set(&[1, 4, 7, 10]));
        assert_eq!(w3.lower[1], set(&[2, 5, 8, 11]));
        assert_eq!(w3.lower[2], set(&[3, 6, 9]));
        assert_eq!(w3.upper[0], set(&[1, 2, 3, 10]));
        assert_eq!(w3.upper[1], set(&[4, 5, 6, 11]));
        assert_eq!(w3.upper[2], set(&[7, 8, 9]));
    }

    #[test]
    fn opening_boards_satisfy_the_invariant() {
        for w in 1..=3 {
            let board = opening_board(w);
            verify_width3_invariant(&board).unwrap();
        }
    }

    #[test]
    fn the_opening_spares_sit_on_disjoint_edges() {
        let board = opening_board(3);
        let state = LocalColorState::derive(&board).unwrap();
        assert_eq!(state.selected(PointId(1), PointId(4)), Some(ColorId(1)));
        assert_eq!(state.selected(PointId(3), PointId(6)), Some(ColorId(9)));
        assert_eq!(
            state.spares(),
            &[
                (ColorId(10), (PointId(1), PointId(4))),
                (ColorId(11), (PointId(2), PointId(5))),
            ]
        );
    }

    #[test]
    fn a_width_one_round_reuses_the_single_color() {
        let board = opening_board(1);
        let mv = LocalMove {
            middle: BTreeSet::from([PointId(3)]),
            edges_lm: BTreeSet::from([(PointId(1), PointId(3))]),
            edges_mt: BTreeSet::from([(PointId(3), PointId(2))]),
        };
        validate_local_move(&board, &mv, 2).unwrap();
        let chi = local_round(&board, &mv).unwrap();
        validate_local_coloring(&board, &mv, &chi, 2).unwrap();
        assert_eq!(chi[&PointId(3)], ColorSet::from([ColorId(1)]));
    }
}
