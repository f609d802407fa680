use poset_core::PointId;
use thiserror::Error;

use crate::recognize::TwoPlusTwoWitness;

/// Errors raised by interval-order operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    /// The poset admits no interval representation; the witness is a
    /// concrete 2+2 configuration (`a < b`, `c < d`, `a ∥ d`, `c ∥ b`).
    #[error("not an interval order: 2+2 witness {0}")]
    NotIntervalOrder(TwoPlusTwoWitness),

    /// A right-endpoint rearrangement would change the induced order: the
    /// relation between `lower` and `upper` (in that orientation) flips.
    #[error("rearrangement changes the order between {lower} and {upper}")]
    OrderChanged { lower: PointId, upper: PointId },

    /// An interval would be degenerate or empty (left >= right).
    #[error("degenerate interval for point {0}: left endpoint must be strictly below right")]
    DegenerateInterval(PointId),

    /// Two intervals were assigned to the same point id.
    #[error("duplicate interval for point {0}")]
    DuplicatePoint(PointId),

    /// The operation referred to a point with no interval.
    #[error("unknown point {0}")]
    UnknownPoint(PointId),
}
