//! Interval orders: recognition, witnesses, and exact interval representations.
//!
//! A finite poset is an *interval order* when each point `x` can be assigned a
//! nondegenerate closed interval `I(x) = [l_x, r_x]` on the rational line such
//! that `x < y` holds exactly when `r_x < l_y` (disjoint, `I(x)` entirely to
//! the left). Equivalently (Fishburn), the poset contains no four points
//! `a, b, c, d` with `a < b`, `c < d`, `a ∥ d`, `c ∥ b` — two disjoint
//! 2-chains forming a "2+2" — and equivalently again, the family of open
//! down-sets is linearly ordered by inclusion.
//!
//! This crate provides:
//!
//! - [`IntervalRep`]: an exact-rational interval assignment with the induced
//!   poset derivable from it ([`IntervalRep::induced_poset`]).
//! - [`is_interval_order`] / [`two_plus_two`]: linear-down-set recognition
//!   with a concrete [`TwoPlusTwoWitness`] on failure.
//! - [`realize`]: the canonical representation built from down-set/up-set
//!   ranks, verified by round-trip.
//! - [`rearrange_right_endpoints`]: move right endpoints while proving the
//!   induced order unchanged (the relaxation used by representation-based
//!   adversaries).
//! - [`oracle`]: brute-force 2+2 search for cross-checking.
//! - [`text`]: the `i <id> <left> <right>` line format with exact rationals.
//!
//! Endpoints are exact [`num_rational::BigRational`] values throughout; no
//! floating point is used anywhere, so endpoint equality and ordering are
//! always decidable and deterministic.

mod error;
pub mod oracle;
mod realize;
mod recognize;
mod rep;
pub mod text;

pub use error::IntervalError;
pub use realize::{rearrange_right_endpoints, realize};
pub use recognize::{is_interval_order, two_plus_two, TwoPlusTwoWitness};
pub use rep::{Endpoint, IntervalRep};
