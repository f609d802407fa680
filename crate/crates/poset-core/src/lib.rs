//! Finite partially ordered sets and the order-theoretic machinery used
//! throughout this workspace: Dilworth width via bipartite matching, minimum
//! chain partitions, the lattice of maximum antichains, high antichains, and
//! cores of regular bipartite posets.
//!
//! # Overview
//!
//! * [`Poset`] — a finite strict poset kept transitively closed; points are
//!   inserted above a set of predecessors, so every insertion is maximal.
//! * [`Antichain`] / [`ChainPartition`] — validated witnesses for the two
//!   sides of Dilworth duality ([`Poset::width`],
//!   [`Poset::min_chain_partition`]).
//! * Maximum-antichain lattice — [`Poset::ma_join`], [`Poset::ma_meet`] and
//!   the order test [`Poset::ma_le`]; the top of the lattice restricted to a
//!   subset is [`Poset::hma`], with the membership test [`Poset::is_high`].
//! * [`RegularBipartite`] — two same-size levels with a relation between
//!   them; [`core`] keeps exactly the edges that lie in some perfect
//!   matching, [`classify_core`] names cores of width ≤ 3, and
//!   [`compose_matched_cores`] superposes two core relations.
//! * [`oracle`] — deliberately naive brute-force implementations of the same
//!   questions, used as ground truth by the test suites of every crate in
//!   the workspace.
//! * [`text`] — the line-based `p <id> [<pred> ...]` poset format with a
//!   bit-exact round-trip guarantee.
//!
//! All operations are deterministic: wherever a choice is mathematically
//! arbitrary (for example "a" maximum antichain), the lexicographically
//! smallest candidate by point id is produced.

mod bipartite;
mod error;
mod id;
mod matching;
mod poset;
pub mod oracle;
pub mod text;

pub use bipartite::{
    classify_core, compose_matched_cores, core, is_core, CoreClass, CoreTag, RegularBipartite,
};
pub use error::{CoreError, PosetError};
pub use id::PointId;
pub use poset::{Antichain, ChainPartition, Poset};
