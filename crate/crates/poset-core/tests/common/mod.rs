//! Shared helpers for the integration tests: seeded random structures.
#![allow(dead_code)] // each test binary uses a different subset

use std::collections::BTreeSet;

use poset_core::{PointId, Poset, RegularBipartite};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random poset on `n` points with shuffled ids: each new point picks every
/// earlier point as a predecessor independently with probability `density`.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Poset {
    let mut ids: Vec<i64> = (0..n as i64).collect();
    ids.shuffle(rng);
    let mut poset = Poset::new();
    let mut present: Vec<PointId> = Vec::new();
    for &raw in &ids {
        let id = PointId(raw);
        let preds: BTreeSet<PointId> = present
            .iter()
            .copied()
            .filter(|_| rng.random_bool(density))
            .collect();
        poset.add_point(id, &preds).unwrap();
        present.push(id);
    }
    poset
}

/// A random subset of the poset's points.
pub fn random_subset(rng: &mut ChaCha8Rng, poset: &Poset, keep: f64) -> BTreeSet<PointId> {
    poset.points().filter(|_| rng.random_bool(keep)).collect()
}

/// A random bipartite instance of the given width that is guaranteed to have
/// a perfect matching (the identity matching is always included).
pub fn random_bipartite(rng: &mut ChaCha8Rng, width: usize, density: f64) -> RegularBipartite {
    let lower: Vec<PointId> = (0..width as i64).map(PointId).collect();
    let upper: Vec<PointId> = (100..100 + width as i64).map(PointId).collect();
    let mut edges = BTreeSet::new();
    for i in 0..width {
        edges.insert((lower[i], upper[i]));
        for j in 0..width {
            if rng.random_bool(density) {
                edges.insert((lower[i], upper[j]));
            }
        }
    }
    RegularBipartite::new(lower, upper, edges).unwrap()
}
