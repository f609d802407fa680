use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use poset_core::{PointId, Poset};

use crate::error::IntervalError;
use crate::recognize::two_plus_two;
use crate::rep::{Endpoint, IntervalRep};

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds the canonical interval representation of an interval order.
///
/// In an interval order the open down-sets form a chain under inclusion, so
/// distinct down-sets have distinct sizes; the same holds for up-sets, and
/// both chains have the same length `K`. Each point gets
/// `left = rank of its down-set` and `right = (K - 1) - rank of its up-set`
/// on the integer grid `0..K`; a trailing `+ 1/2` on every right endpoint
/// keeps all comparisons (integer `right < left` tests) intact while making
/// every interval nondegenerate.
///
/// Fails with the concrete 2+2 witness when the poset is not an interval
/// order. The round-trip `realize(p).induced_poset() == p` is asserted in
/// debug builds and covered by property tests.
pub fn realize(poset: &Poset) -> Result<IntervalRep, IntervalError> {
    if let Some(witness) = two_plus_two(poset) {
        return Err(IntervalError::NotIntervalOrder(witness));
    }

    let down_sizes: BTreeSet<usize> = poset.points().map(|p| poset.down_set(p).len()).collect();
    let up_sizes: BTreeSet<usize> = poset.points().map(|p| poset.up_set(p).len()).collect();
    debug_assert_eq!(
        down_sizes.len(),
        up_sizes.len(),
        "an interval order has as many distinct down-sets as up-sets"
    );
    let down_rank: BTreeMap<usize, usize> = down_sizes
        .iter()
        .enumerate()
        .map(|(rank, &size)| (size, rank))
        .collect();
    let up_rank: BTreeMap<usize, usize> = up_sizes
        .iter()
        .enumerate()
        .map(|(rank, &size)| (size, rank))
        .collect();
    let k = down_rank.len();

    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut rep = IntervalRep::new();
    for p in poset.points() {
        let left = down_rank[&poset.down_set(p).len()];
        let right = (k - 1) - up_rank[&poset.up_set(p).len()];
        debug_assert!(left <= right, "canonical ranks must form an interval");
        rep.insert(p, int(left), int(right) + &half)
            .expect("canonical endpoints are nondegenerate and unique per point");
    }
    debug_assert_eq!(rep.induced_poset(), *poset, "canonical round-trip");
    Ok(rep)
}

/// Moves right endpoints to `targets` (points absent from `targets` keep
/// their endpoint), requiring that the induced order is unchanged: for every
/// moved `x` and every other `y`, `right(x) < left(y)` must keep its truth
/// value. Returns the rearranged representation, or `OrderChanged` naming
/// the first ordered pair whose relation would flip.
pub fn rearrange_right_endpoints(
    rep: &IntervalRep,
    targets: &BTreeMap<PointId, Endpoint>,
) -> Result<IntervalRep, IntervalError> {
    for &id in targets.keys() {
        if !rep.contains(id) {
            return Err(IntervalError::UnknownPoint(id));
        }
    }
    let mut out = IntervalRep::new();
    for (id, l, r) in rep.iter() {
        let new_r = targets.get(&id).cloned().unwrap_or_else(|| r.clone());
        out.insert(id, l.clone(), new_r)?;
    }
    // Only right endpoints moved, so the only relations that can change are
    // "x entirely left of y" tests, which compare a (possibly moved) right
    // against an unchanged left.
    for x in rep.points() {
        for y in rep.points() {
            if x != y && rep.before(x, y) != out.before(x, y) {
                return Err(IntervalError::OrderChanged { lower: x, upper: y });
            }
        }
    }
    Ok(out)
}
