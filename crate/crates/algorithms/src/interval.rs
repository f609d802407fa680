//! The up-growing interval strategy: at most `2·width − 1` chains on any
//! up-growing interval order, which is optimal.
//!
//! The state keeps a tower of *high* antichains `L_1 ⊆ … ⊆ L_w` (ordered by
//! up-closure) with `|L_i| = i`, plus two chains `α_i`, `β_i` per level; the
//! chains partition all points. A new maximal point `x` either raises the
//! width (open a fresh level and chain) or lands strictly above some minimal
//! level `L_{i₀}`; then `x` extends the chain stored as `β_{i₀}` and the two
//! chains of level `i₀` swap roles. Since `β_1` would always sit below the
//! single point of `L_1`, and hence below `x` whenever `i₀ = 1`, the point can
//! take `α_1` instead — so `β_1` stays empty forever and only `2w − 1` chains
//! are ever used.

use std::collections::{BTreeMap, BTreeSet};
use std::mem;

use game_engine::{Arrival, Partitioner, StrategyError};
use interval_orders::two_plus_two;
use poset_core::{PointId, Poset};

use crate::IntervalAlgError;

/// Canonical interval representation on a doubled integer grid: left endpoints
/// are even, right endpoints odd, so a position is shared by no left/right
/// pair and `p < q ⟺ r2(p) < l2(q)` whenever the poset is an interval order.
struct Ranks {
    order: Vec<PointId>,
    l2: Vec<i64>,
    r2: Vec<i64>,
    index: BTreeMap<PointId, usize>,
    /// Exclusive upper bound on grid positions.
    grid: usize,
}

impl Ranks {
    fn of(poset: &Poset) -> Self {
        let order: Vec<PointId> = poset.points().collect();
        let n = order.len();
        let mut down_sizes = Vec::with_capacity(n);
        let mut up_sizes = Vec::with_capacity(n);
        for &p in &order {
            down_sizes.push(poset.down_set_len(p));
            up_sizes.push(poset.up_set_len(p));
        }
        let mut down_distinct = down_sizes.clone();
        down_distinct.sort_unstable();
        down_distinct.dedup();
        let mut up_distinct = up_sizes.clone();
        up_distinct.sort_unstable();
        up_distinct.dedup();
        // The two counts agree on interval orders; max keeps garbage finite.
        let k = down_distinct.len().max(up_distinct.len()) as i64;
        let mut l2 = Vec::with_capacity(n);
        let mut r2 = Vec::with_capacity(n);
        for i in 0..n {
            let rank_down = down_distinct.partition_point(|&s| s < down_sizes[i]) as i64;
            let rank_up = up_distinct.partition_point(|&s| s < up_sizes[i]) as i64;
            l2.push(2 * rank_down);
            r2.push(2 * (k - 1 - rank_up) + 1);
        }
        let index = order
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect();
        Ranks {
            order,
            l2,
            r2,
            index,
            grid: (2 * k) as usize,
        }
    }

    fn left(&self, p: PointId) -> i64 {
        self.l2[self.index[&p]]
    }

    fn right(&self, p: PointId) -> i64 {
        self.r2[self.index[&p]]
    }

    /// Maximum number of member intervals over a common grid position, and
    /// the rightmost position attaining it.
    fn max_overlap<I: IntoIterator<Item = usize>>(&self, members: I) -> (usize, i64) {
        let mut diff = vec![0i64; self.grid + 1];
        let mut any = false;
        for i in members {
            let (l, r) = (self.l2[i], self.r2[i]);
            if l <= r {
                diff[l as usize] += 1;
                diff[r as usize + 1] -= 1;
                any = true;
            }
        }
        if !any {
            return (0, 0);
        }
        let mut cur = 0i64;
        let mut best = 0i64;
        let mut pos = 0i64;
        for (p, d) in diff.iter().enumerate() {
            cur += d;
            if cur >= best {
                best = cur;
                pos = p as i64;
            }
        }
        (best as usize, pos)
    }
}

/// Level and chain bookkeeping of the up-growing interval strategy.
#[derive(Debug, Clone, Default)]
pub struct IntervalLevelState {
    poset: Poset,
    /// `levels[i]` holds `L_{i+1}`.
    levels: Vec<BTreeSet<PointId>>,
    alpha: Vec<BTreeSet<PointId>>,
    beta: Vec<BTreeSet<PointId>>,
    /// Physical chain index backing each `α_i` / `β_i`; `β` chains are minted
    /// lazily on first use, and `β_1` never is.
    alpha_chain: Vec<usize>,
    beta_chain: Vec<Option<usize>>,
    next_chain: usize,
}

impl IntervalLevelState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Current width, i.e. the number of levels.
    pub fn width(&self) -> usize {
        self.levels.len()
    }

    /// The level antichains `L_1 … L_w`.
    pub fn levels(&self) -> &[BTreeSet<PointId>] {
        &self.levels
    }

    /// The chains `α_1 … α_w`.
    pub fn alphas(&self) -> &[BTreeSet<PointId>] {
        &self.alpha
    }

    /// The chains `β_1 … β_w` (`β_1` is always empty).
    pub fn betas(&self) -> &[BTreeSet<PointId>] {
        &self.beta
    }

    /// Number of distinct chain indices handed out so far (≤ `2·width − 1`).
    pub fn chain_count(&self) -> usize {
        self.next_chain
    }

    fn mint(&mut self) -> usize {
        self.next_chain += 1;
        self.next_chain
    }
}

/// Produces a `NotIntervalOrder` error carrying a genuine 2+2 from the poset.
/// Every call site has already observed the level structure misbehaving, which
/// is impossible on interval orders, so a witness must exist.
fn not_interval(poset: &Poset) -> IntervalAlgError {
    match two_plus_two(poset) {
        Some(witness) => IntervalAlgError::NotIntervalOrder(witness),
        None => unreachable!("level structure broke on a genuine interval order"),
    }
}

/// HMA of the up-closure of `level`, computed positionally: the closure is
/// `level ∪ {q : l2(q) > min right endpoint of level}`, and its highest
/// maximum antichain is the set of member intervals containing the rightmost
/// position of maximum overlap.
fn hma_of_up_closure(level: &BTreeSet<PointId>, ranks: &Ranks) -> BTreeSet<PointId> {
    let min_r = level
        .iter()
        .map(|&p| ranks.right(p))
        .min()
        .expect("levels are nonempty");
    let members: Vec<usize> = (0..ranks.order.len())
        .filter(|&i| ranks.l2[i] > min_r || level.contains(&ranks.order[i]))
        .collect();
    let (_, pos) = ranks.max_overlap(members.iter().copied());
    members
        .into_iter()
        .filter(|&i| ranks.l2[i] <= pos && pos <= ranks.r2[i])
        .map(|i| ranks.order[i])
        .collect()
}

/// One step of the up-growing interval strategy: insert the maximal point
/// `id` with the given strict down-set, restore the level invariant, and
/// return the 1-based index of the chain that takes the point.
pub fn up_growing_interval_step(
    state: &mut IntervalLevelState,
    id: PointId,
    down_set: &BTreeSet<PointId>,
) -> Result<usize, IntervalAlgError> {
    state
        .poset
        .add_point(id, down_set)
        .map_err(|e| IntervalAlgError::InvalidArrival(e.to_string()))?;
    let x = id;
    let w = state.levels.len();

    let ranks = Ranks::of(&state.poset);
    let (new_width, _) = ranks.max_overlap(0..ranks.order.len());

    if new_width > w {
        // Case A: the width grew, so x opens level w+1 above the old top
        // level. High antichains sit above every maximum antichain, so a
        // width bump forces x outside L_w↑ and L_w ∪ {x} is an antichain.
        if new_width != w + 1 {
            return Err(not_interval(&state.poset));
        }
        let mut level: BTreeSet<PointId> = state.levels.last().cloned().unwrap_or_default();
        for &l in &level {
            if !state.poset.incomparable(l, x) {
                return Err(not_interval(&state.poset));
            }
        }
        level.insert(x);
        state.levels.push(level);
        state.alpha.push(BTreeSet::from([x]));
        state.beta.push(BTreeSet::new());
        let chain = state.mint();
        state.alpha_chain.push(chain);
        state.beta_chain.push(None);
        debug_assert!(jn_invariant_by_ranks(state, &ranks));
        return Ok(chain);
    }

    // Case B: width unchanged, so x lies strictly above some level; i₀ is the
    // least such level (tested against the real order, not the ranks).
    let Some(i0) = (1..=w).find(|&i| state.levels[i - 1].iter().any(|&l| state.poset.lt(l, x)))
    else {
        return Err(not_interval(&state.poset));
    };

    // Chain safety: the chain x is about to join must stay a chain. For
    // i₀ > 1 this is "b < x for all b ∈ β_{i₀}", which the 2+2-freeness of
    // interval orders guarantees; a violation yields a witness. For i₀ = 1
    // (where x takes α_1 instead of the always-empty β_1) the members of α_1
    // sit below the single point of L_1, which sits below x.
    let joining = if i0 == 1 {
        &state.alpha[0]
    } else {
        &state.beta[i0 - 1]
    };
    for &b in joining {
        if !state.poset.lt(b, x) {
            return Err(not_interval(&state.poset));
        }
    }

    // Refresh every level as the HMA of its own up-closure in the new poset.
    // Levels below i₀ provably stay fixed; levels from i₀ up can change, and
    // L_{i₀} becomes exactly L_{i₀−1} ∪ {x}.
    let mut new_levels = state.levels.clone();
    for i in 1..=w {
        let refreshed = hma_of_up_closure(&state.levels[i - 1], &ranks);
        if refreshed.len() != i {
            return Err(not_interval(&state.poset));
        }
        if i < i0 && refreshed != state.levels[i - 1] {
            return Err(not_interval(&state.poset));
        }
        new_levels[i - 1] = refreshed;
    }
    let mut expected_i0: BTreeSet<PointId> = if i0 >= 2 {
        state.levels[i0 - 2].clone()
    } else {
        BTreeSet::new()
    };
    expected_i0.insert(x);
    if new_levels[i0 - 1] != expected_i0 {
        return Err(not_interval(&state.poset));
    }
    state.levels = new_levels;

    let emitted = if i0 == 1 {
        state.alpha[0].insert(x);
        state.alpha_chain[0]
    } else {
        let j = i0 - 1;
        let chain = match state.beta_chain[j] {
            Some(c) => c,
            None => {
                let c = state.mint();
                state.beta_chain[j] = Some(c);
                c
            }
        };
        state.beta[j].insert(x);
        mem::swap(&mut state.alpha[j], &mut state.beta[j]);
        let displaced = state.alpha_chain[j];
        state.alpha_chain[j] = chain;
        state.beta_chain[j] = Some(displaced);
        chain
    };
    debug_assert!(jn_invariant_by_ranks(state, &ranks));
    Ok(emitted)
}

/// Cheap positional rendering of the level/chain invariant, used as a debug
/// assertion after every step. Faithful on interval orders; [`verify_levels`]
/// is the definitional (oracle-grade) version for tests.
fn jn_invariant_by_ranks(state: &IntervalLevelState, ranks: &Ranks) -> bool {
    let w = state.levels.len();
    let mut total = 0;
    for i in 1..=w {
        let level = &state.levels[i - 1];
        if level.len() != i {
            return false;
        }
        // Nesting of up-closures: every member of L_i lies in L_{i+1}↑c.
        if i < w {
            let min_r_next = state.levels[i]
                .iter()
                .map(|&p| ranks.right(p))
                .min()
                .unwrap();
            for &l in level {
                if !(state.levels[i].contains(&l) || ranks.left(l) > min_r_next) {
                    return false;
                }
            }
        }
        let max_l = level.iter().map(|&p| ranks.left(p)).max().unwrap();
        let min_r_prev = if i >= 2 {
            state.levels[i - 2]
                .iter()
                .map(|&p| ranks.right(p))
                .min()
                .unwrap()
        } else {
            i64::MAX
        };
        // α_i ⊆ L_i↓c − L_{i−1}↑c and β_i ⊆ L_i↓open.
        for &a in &state.alpha[i - 1] {
            let in_down_closed = level.contains(&a) || ranks.right(a) < max_l;
            let in_up_prev = i >= 2
                && (state.levels[i - 2].contains(&a) || ranks.left(a) > min_r_prev);
            if !in_down_closed || in_up_prev {
                return false;
            }
        }
        for &b in &state.beta[i - 1] {
            if ranks.right(b) >= max_l {
                return false;
            }
        }
        total += state.alpha[i - 1].len() + state.beta[i - 1].len();
    }
    total == state.poset.len() && (w == 0 || state.beta[0].is_empty())
}

/// Definitional check of the full invariant against order-theoretic oracles:
/// every `L_i` is a high antichain of size `i` equal to the HMA of its own
/// up-closure, the up-closures are nested, the `α`/`β` chains partition the
/// poset, `α_i ⊆ L_i↓c − L_{i−1}↑c`, `β_i ⊆ L_i↓open`, and `β_1` is empty.
/// Intended for tests; quadratic and slower than the stepping itself.
pub fn verify_levels(state: &IntervalLevelState) -> Result<(), String> {
    let poset = state.poset();
    let w = state.levels.len();
    if poset.width() != w {
        return Err(format!("state width {w} != poset width {}", poset.width()));
    }
    let mut prev_closure: BTreeSet<PointId> = BTreeSet::new();
    let mut closures = Vec::new();
    for i in 1..=w {
        let level = &state.levels[i - 1];
        if level.len() != i {
            return Err(format!("|L_{i}| = {} != {i}", level.len()));
        }
        let antichain = poset
            .antichain(level.iter().copied())
            .map_err(|e| format!("L_{i} is not an antichain: {e}"))?;
        if !poset.is_high(&antichain) {
            return Err(format!("L_{i} is not high"));
        }
        let closure = poset.up_closure(&antichain);
        if !prev_closure.is_subset(&closure) {
            return Err(format!("L_{}↑ ⊄ L_{i}↑", i - 1));
        }
        let hma = poset
            .hma(&closure)
            .map_err(|e| format!("hma(L_{i}↑) failed: {e}"))?;
        if hma.members() != level {
            return Err(format!("L_{i} != hma(L_{i}↑)"));
        }
        prev_closure = closure.clone();
        closures.push(closure);
    }
    let mut covered: BTreeSet<PointId> = BTreeSet::new();
    let mut total = 0;
    for i in 1..=w {
        for (name, chain) in [("α", &state.alpha[i - 1]), ("β", &state.beta[i - 1])] {
            let members: Vec<PointId> = chain.iter().copied().collect();
            for (ai, &a) in members.iter().enumerate() {
                for &b in &members[ai + 1..] {
                    if !poset.comparable(a, b) {
                        return Err(format!("{name}_{i} is not a chain: {a} ∥ {b}"));
                    }
                }
            }
            total += members.len();
            covered.extend(members);
        }
        let level = &state.levels[i - 1];
        let down_closed: BTreeSet<PointId> = poset
            .points()
            .filter(|&q| level.contains(&q) || level.iter().any(|&l| poset.lt(q, l)))
            .collect();
        for &a in &state.alpha[i - 1] {
            if !down_closed.contains(&a) {
                return Err(format!("α_{i} ⊄ L_{i}↓c"));
            }
            if i >= 2 && closures[i - 2].contains(&a) {
                return Err(format!("α_{i} meets L_{}↑c", i - 1));
            }
        }
        for &b in &state.beta[i - 1] {
            if !level.iter().any(|&l| poset.lt(b, l)) {
                return Err(format!("β_{i} ⊄ L_{i}↓open"));
            }
        }
    }
    if total != poset.len() || covered.len() != poset.len() {
        return Err("chains do not partition the poset".into());
    }
    if w > 0 && !state.beta[0].is_empty() {
        return Err("β_1 is nonempty".into());
    }
    Ok(())
}

/// The up-growing interval strategy as a pluggable game strategy.
#[derive(Debug, Clone, Default)]
pub struct UpGrowingInterval {
    state: IntervalLevelState,
}

impl UpGrowingInterval {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&self) -> &IntervalLevelState {
        &self.state
    }
}

impl Partitioner for UpGrowingInterval {
    fn assign(&mut self, _poset: &Poset, arrival: &Arrival) -> Result<usize, StrategyError> {
        up_growing_interval_step(&mut self.state, arrival.id, &arrival.down_set)
            .map_err(|e| StrategyError(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(state: &mut IntervalLevelState, id: i64, preds: &[i64]) -> usize {
        let down: BTreeSet<PointId> = preds.iter().map(|&p| PointId(p)).collect();
        let chain = up_growing_interval_step(state, PointId(id), &down).unwrap();
        verify_levels(state).unwrap();
        chain
    }

    #[test]
    fn single_point_opens_alpha_one() {
        let mut state = IntervalLevelState::new();
        assert_eq!(step(&mut state, 1, &[]), 1);
        assert_eq!(state.width(), 1);
        assert_eq!(state.chain_count(), 1);
    }

    #[test]
    fn two_incomparable_points_use_two_chains() {
        let mut state = IntervalLevelState::new();
        assert_eq!(step(&mut state, 1, &[]), 1);
        assert_eq!(step(&mut state, 2, &[]), 2);
        assert_eq!(state.width(), 2);
        assert_eq!(state.chain_count(), 2);
    }

    #[test]
    fn chain_input_stays_on_one_chain() {
        let mut state = IntervalLevelState::new();
        let mut below = Vec::new();
        for id in 1..=10 {
            assert_eq!(step(&mut state, id, &below), 1);
            below.push(id);
        }
        assert_eq!(state.width(), 1);
        assert_eq!(state.chain_count(), 1);
    }

    #[test]
    fn duplicate_and_unknown_arrivals_are_rejected() {
        let mut state = IntervalLevelState::new();
        step(&mut state, 1, &[]);
        let err = up_growing_interval_step(&mut state, PointId(1), &BTreeSet::new());
        assert!(matches!(err, Err(IntervalAlgError::InvalidArrival(_))));
        let down = BTreeSet::from([PointId(99)]);
        let err = up_growing_interval_step(&mut state, PointId(2), &down);
        assert!(matches!(err, Err(IntervalAlgError::InvalidArrival(_))));
    }
}
