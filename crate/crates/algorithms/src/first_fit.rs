//! First-Fit: each arriving point goes to the oldest chain that still works.
//!
//! Optimal on up-growing interval orders in spirit but unboundedly bad in
//! general: the two-chain adversary in the `spoilers` crate forces arbitrarily
//! many chains out of it while keeping width 2.

use game_engine::{Arrival, Partitioner, StrategyError};
use poset_core::{PointId, Poset};

/// First-Fit bookkeeping: the top point of every open chain.
///
/// Every arrival is maximal (points are presented by their down-sets), so
/// chains only ever grow upward and `chain ∪ {x}` is a chain iff the current
/// top lies below `x`.
#[derive(Debug, Clone, Default)]
pub struct FirstFitState {
    tops: Vec<PointId>,
}

impl FirstFitState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of chains opened so far.
    pub fn chain_count(&self) -> usize {
        self.tops.len()
    }

    /// Current top of each chain, in chain-index order.
    pub fn tops(&self) -> &[PointId] {
        &self.tops
    }
}

/// One First-Fit step: `id` (already inserted into `poset`) joins the
/// smallest-index chain whose top lies below it, or opens a new chain.
/// Chain indices are 1-based: an antichain gets 1, 2, …, k; a chain stays on 1.
pub fn first_fit(state: &mut FirstFitState, poset: &Poset, id: PointId) -> usize {
    for (k, top) in state.tops.iter_mut().enumerate() {
        if poset.lt(*top, id) {
            *top = id;
            return k + 1;
        }
    }
    state.tops.push(id);
    state.tops.len()
}

/// First-Fit as a pluggable game strategy.
#[derive(Debug, Clone, Default)]
pub struct FirstFit {
    state: FirstFitState,
}

impl FirstFit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&self) -> &FirstFitState {
        &self.state
    }
}

impl Partitioner for FirstFit {
    fn assign(&mut self, poset: &Poset, arrival: &Arrival) -> Result<usize, StrategyError> {
        Ok(first_fit(&mut self.state, poset, arrival.id))
    }
}
