use crate::PointId;
use thiserror::Error;

/// Errors produced by [`Poset`](crate::Poset) construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    /// A point with this id is already present.
    #[error("duplicate point id {0}")]
    DuplicateId(PointId),
    /// A predecessor of the inserted point is not a member of the poset.
    #[error("unknown predecessor {pred} of point {point}")]
    UnknownPredecessor { point: PointId, pred: PointId },
    /// An id that is not a member of the poset was used in a query.
    #[error("unknown point id {0}")]
    UnknownPoint(PointId),
    /// A set that was required to be an antichain contains a comparable pair.
    #[error("{a} < {b}, so the set is not an antichain")]
    NotAntichain { a: PointId, b: PointId },
    /// A lattice operation was given an antichain that is not maximum.
    #[error("antichain of size {size} is not maximum (width is {width})")]
    NotMaximumAntichain { size: usize, width: usize },
    /// The highest maximum antichain of the empty subposet does not exist.
    #[error("the empty restriction has no highest maximum antichain")]
    EmptyRestriction,
}

/// Errors produced by [`RegularBipartite`](crate::RegularBipartite)
/// construction and the core operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    /// Regularity fails: the level-to-level relation has no perfect matching.
    #[error("no perfect matching between the levels")]
    NoPerfectMatching,
    /// The relation is not equal to its own core.
    #[error("the poset is not a core")]
    NotACore,
    /// Core classification only covers widths 1 through 3.
    #[error("cannot classify a core of width {0}; only widths 1..=3 are classified")]
    WidthTooLarge(usize),
    /// Composition requires the upper level of one poset to equal the lower
    /// level of the next.
    #[error("upper level of the first poset differs from the lower level of the second")]
    LevelMismatch,
    /// The two levels share a point.
    #[error("levels are not disjoint: {0} appears on both sides")]
    OverlappingLevels(PointId),
    /// The two levels differ in size.
    #[error("levels differ in size: {lower} lower vs {upper} upper points")]
    SizeMismatch { lower: usize, upper: usize },
    /// A level lists the same point twice.
    #[error("duplicate point {0} within a level")]
    DuplicateLevelPoint(PointId),
    /// An edge endpoint does not belong to the corresponding level.
    #[error("edge ({0}, {1}) has an endpoint outside the levels")]
    EdgeOutsideLevels(PointId, PointId),
}
