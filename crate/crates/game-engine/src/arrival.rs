use std::collections::BTreeSet;

use poset_core::{PointId, Poset};

use crate::error::StrategyError;
use crate::transcript::ChainTranscript;

/// One presented point: a fresh id together with its full strict down-set
/// (every point strictly below it, transitively closed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrival {
    pub id: PointId,
    pub down_set: BTreeSet<PointId>,
}

impl Arrival {
    pub fn new(id: PointId, down_set: impl IntoIterator<Item = PointId>) -> Self {
        Self {
            id,
            down_set: down_set.into_iter().collect(),
        }
    }
}

/// What a Spoiler may observe: the poset built so far and the public
/// transcript (arrivals plus Algorithm's chain assignments).
#[derive(Clone, Copy)]
pub struct GameView<'a> {
    pub poset: &'a Poset,
    pub transcript: &'a ChainTranscript,
}

/// Algorithm side of the on-line partitioning games: assign each arriving
/// point to a chain, irrevocably.
pub trait Partitioner {
    /// `poset` already contains the arriving point. The returned key names a
    /// chain in the algorithm's own numbering; the referee renumbers keys
    /// densely (1-based, in order of first use) and validates that the
    /// point extends that chain.
    fn assign(&mut self, poset: &Poset, arrival: &Arrival) -> Result<usize, StrategyError>;
}

/// Spoiler side of the on-line partitioning games: produce the next point,
/// or `None` to end the game.
pub trait PointSource {
    fn next_point(&mut self, view: GameView<'_>) -> Option<Arrival>;
}
