//! Algorithm-side strategies for on-line chain partitioning.
//!
//! - [`FirstFit`]: the greedy baseline — optimal nowhere, instructive
//!   everywhere (the `spoilers` crate forces it to use arbitrarily many
//!   chains at width 2).
//! - [`UpGrowingInterval`]: the level-tower strategy achieving the optimal
//!   `2·width − 1` chains on up-growing interval orders.
//! - The width ≤ 3 local colorer ([`local_first_round`], [`local_round`],
//!   [`LocalCoreDisjoint`]): plays the core-disjoint local game with a fixed
//!   palette of 1 / 4 / 11 colors for widths 1 / 2 / 3.
//! - [`ComposedW3`]: the reduction from general on-line chain partitioning to
//!   local games, giving ≤ 16 chains on width-3 posets (≤ 5 at width 2).

mod error;
mod first_fit;
mod interval;
mod local;
mod reduction;

pub use error::{ComposedError, IntervalAlgError, LocalAlgError};
pub use first_fit::{first_fit, FirstFit, FirstFitState};
pub use interval::{
    up_growing_interval_step, verify_levels, IntervalLevelState, UpGrowingInterval,
};
pub use local::{
    local_first_round, local_round, verify_width3_invariant, FirstRound, LocalColorState,
    LocalCoreDisjoint,
};
pub use reduction::{composed_chain_bound, verify_reduction, ComposedW3, ReductionState};
