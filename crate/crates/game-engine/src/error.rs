use poset_core::PointId;
use thiserror::Error;

/// A strategy (Algorithm side) giving up or detecting an internal
/// inconsistency. The referee converts this into an illegal-move verdict.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct StrategyError(pub String);

/// Verdicts from the on-line partitioning referees.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    /// Spoiler presented an inconsistent point: duplicate id, unknown
    /// predecessor, or a down-set that is not transitively closed.
    #[error("round {round}: spoiler illegal move at {id}: {reason}")]
    SpoilerIllegalMove {
        round: usize,
        id: PointId,
        reason: String,
    },

    /// Algorithm assigned the point to a set that is not a chain, or failed
    /// to produce an assignment.
    #[error("round {round}: algorithm illegal move at {id}: {reason}")]
    AlgorithmIllegalMove {
        round: usize,
        id: PointId,
        reason: String,
    },

    /// The up-growing referee saw a point that is not maximal. Arrivals
    /// carry only down-sets, so every insertion through the public API is
    /// maximal and this cannot fire in a refereed game; it guards direct
    /// uses of [`crate::assert_up_growing`].
    #[error("round {round}: point {id} is not maximal on arrival (lies below {above})")]
    NotUpGrowing {
        round: usize,
        id: PointId,
        above: PointId,
    },
}
