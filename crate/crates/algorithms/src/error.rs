use interval_orders::TwoPlusTwoWitness;
use poset_core::PointId;
use thiserror::Error;

/// Errors of the up-growing interval strategy.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalAlgError {
    /// The arriving point is not maximal in the poset it joins. Arrivals built
    /// from down-sets are always maximal, so stepping the state through its
    /// public interface never produces this; it is reported for callers that
    /// validate foreign presentations.
    #[error("point {id} arrived below existing point {above}; presentation is not up-growing")]
    NotUpGrowing { id: PointId, above: PointId },
    /// The presented poset contains a 2+2, so it is not an interval order and
    /// the level structure stops making sense. Reported the first time the
    /// chain bookkeeping actually breaks (some `b ∈ β_{i₀}` fails `b < x`).
    #[error("not an interval order: contains the 2+2 {0}")]
    NotIntervalOrder(TwoPlusTwoWitness),
    /// The arrival itself is malformed: duplicate id or unknown predecessor.
    #[error("invalid arrival: {0}")]
    InvalidArrival(String),
}

/// Errors of the width ≤ 3 local-game colorer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalAlgError {
    /// The local strategy is defined for widths 1..=3 only.
    #[error("local strategy supports widths 1 through 3, got {0}")]
    WidthTooLarge(usize),
    /// No entry of the case table matched the round. The table is exhaustive
    /// for legal moves, so this signals an implementation bug, not bad input.
    #[error("no case-table entry matches this round: {0}")]
    UnmatchedCase(String),
}

/// Errors of the composed width ≤ 3 partitioner.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposedError {
    /// The composed strategy relies on the local colorer, which exists only
    /// for widths 1..=3.
    #[error("composed strategy supports widths 1 through 3, got {0}")]
    WidthTooLarge(usize),
    /// The level-`i` local colorer rejected a board the reduction handed it.
    /// The reduction invariant guarantees legal boards, so this must never
    /// fire on valid input.
    #[error("local coloring failed at level {level}: {source}")]
    LocalColoringFailed {
        level: usize,
        source: LocalAlgError,
    },
    /// The arrival itself is malformed: duplicate id or unknown predecessor.
    #[error("invalid arrival: {0}")]
    InvalidArrival(String),
}
