//! Referees, transcripts, and sources for on-line chain partitioning games.
//!
//! Three game flavors are refereed here:
//!
//! - **General on-line partitioning** ([`referee_online`]): Spoiler presents
//!   points one at a time, each with its full down-set; Algorithm must
//!   irrevocably assign each point to a chain.
//! - **Up-growing partitioning** ([`referee_upgrowing`]): as above, with the
//!   additional promise that every presented point is maximal on arrival.
//! - **Core-disjoint local coloring** ([`referee_local`]): Spoiler maintains
//!   a two-level board `(L, T, ≺)` that is a core; each round it interposes a
//!   fresh middle antichain `M` with both `(L, M)` and `(M, T)` cores,
//!   Algorithm multicolors `M` from the colors shared by `L` and `T`, and
//!   Spoiler keeps one of the two pairs as the next board.
//!
//! The referee owns ground truth: it validates every Spoiler move and every
//! Algorithm response, and produces a [`ChainTranscript`] that independently
//! re-validates via [`check_transcript`]. Algorithms see exactly the
//! comparability data the game grants them and nothing else.
//!
//! Chain indices are 1-based and dense in order of first use; "number of
//! chains" always means the number of distinct indices. The [`sources`]
//! module provides deterministic seeded Spoilers: random posets, random
//! width-capped posets, random up-growing interval orders, and random legal
//! local-game moves.

mod arrival;
mod error;
pub mod local;
mod referee;
pub mod sources;
mod transcript;

pub use arrival::{Arrival, GameView, Partitioner, PointSource};
pub use error::{GameError, StrategyError};
pub use local::{
    referee_local, validate_local_coloring, validate_local_move, ColorId, ColorSet,
    ColoringClause, KeepSide, LocalBoard, LocalColorer, LocalGameError, LocalMove,
    LocalMoveSource, MoveClause, Multicoloring,
};
pub use referee::{assert_up_growing, referee_online, referee_upgrowing, OnlineReferee};
pub use transcript::{
    check_transcript, parse_transcript, serialize_transcript, ChainTranscript, TextError,
    TranscriptReport, TranscriptViolation,
};
