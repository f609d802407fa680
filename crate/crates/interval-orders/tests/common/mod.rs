// Shared helpers for interval-orders integration tests. Each test binary
// uses a subset, so unused items are expected.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use poset_core::{PointId, Poset};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Random poset on `n` points via random edges + transitive closure.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Poset {
    let mut ids: Vec<i64> = (0..n as i64).collect();
    ids.shuffle(rng);
    let mut poset = Poset::new();
    let mut inserted: Vec<PointId> = Vec::new();
    for &id in &ids {
        let preds: BTreeSet<PointId> = inserted
            .iter()
            .copied()
            .filter(|_| rng.random_bool(density))
            .collect();
        poset.add_point(PointId(id), &preds).unwrap();
        inserted.push(PointId(id));
    }
    poset
}

/// Random interval order: `n` random integer intervals, then the induced
/// poset. Every interval order on `n` points arises this way.
pub fn random_interval_poset(rng: &mut ChaCha8Rng, n: usize, span: i64) -> Poset {
    random_intervals(rng, n, span).induced_poset()
}

pub fn random_intervals(
    rng: &mut ChaCha8Rng,
    n: usize,
    span: i64,
) -> interval_orders::IntervalRep {
    let mut rep = interval_orders::IntervalRep::new();
    for id in 0..n as i64 {
        let l = rng.random_range(0..span);
        let len = rng.random_range(1..=span / 4 + 1);
        rep.insert(PointId(id), rat(l, 1), rat(l + len, 1)).unwrap();
    }
    rep
}
