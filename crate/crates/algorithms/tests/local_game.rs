//! End-to-end checks of the local-game colorer.
//!
//! The matrix test enumerates every ordered pair of core shapes of equal
//! width, builds a board realizing it (with scrambled point identities,
//! permuted middle alignments and, on complete width-3 boards, varying
//! spare-color hosts), and verifies that the strategy answers with a
//! legal multicoloring whose two candidate successors both satisfy the
//! working invariant. The random-game test lets a seeded Spoiler drive
//! long games and watches the palette stay fixed at 1 / 4 / 11 colors.

use std::collections::BTreeSet;

use algorithms::{local_round, verify_width3_invariant, LocalCoreDisjoint};
use game_engine::sources::RandomLocalSource;
use game_engine::{
    referee_local, validate_local_coloring, validate_local_move, ColorId, ColorSet, KeepSide,
    LocalBoard, LocalMove, Multicoloring,
};
use itertools::Itertools;
use poset_core::{CoreTag, PointId, RegularBipartite};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Unordered pairs of edges sharing no endpoint.
fn disjoint_pairs(
    edges: &[(PointId, PointId)],
) -> Vec<((PointId, PointId), (PointId, PointId))> {
    let mut out = Vec::new();
    for (k, &e1) in edges.iter().enumerate() {
        for &e2 in &edges[k + 1..] {
            if e1.0 != e2.0 && e1.1 != e2.1 {
                out.push((e1, e2));
            }
        }
    }
    out
}

/// A board and move realizing the shape pair `(tag_lm, tag_mt)`: lower
/// points are drawn from `1..=w`, middles from `w+1..=2w`, uppers from
/// `2w+1..=3w`, each level shuffled by `seed`. The middle indices of the
/// upper shape are twisted by `mperm`, which moves the same pair through
/// its different sub-cases. On complete width-3 boards the two spare
/// colors land on the `host_pick`-th disjoint edge pair.
fn build_instance(
    tag_lm: CoreTag,
    tag_mt: CoreTag,
    mperm: &[usize],
    host_pick: usize,
    seed: u64,
) -> (LocalBoard, LocalMove, bool) {
    let w = tag_lm.width();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lows: Vec<PointId> = (1..=w as i64).map(PointId).collect();
    let mut mids: Vec<PointId> = (w as i64 + 1..=2 * w as i64).map(PointId).collect();
    let mut ups: Vec<PointId> = (2 * w as i64 + 1..=3 * w as i64).map(PointId).collect();
    lows.shuffle(&mut rng);
    mids.shuffle(&mut rng);
    ups.shuffle(&mut rng);

    let edges_lm: BTreeSet<(PointId, PointId)> = tag_lm
        .canonical_edges()
        .iter()
        .map(|&(i, j)| (lows[i], mids[j]))
        .collect();
    let edges_mt: BTreeSet<(PointId, PointId)> = tag_mt
        .canonical_edges()
        .iter()
        .map(|&(i, j)| (mids[mperm[i]], ups[j]))
        .collect();
    let mut board_edges: BTreeSet<(PointId, PointId)> = BTreeSet::new();
    for &(l, m) in &edges_lm {
        for &(m2, t) in &edges_mt {
            if m == m2 {
                board_edges.insert((l, t));
            }
        }
    }
    let complete = board_edges.len() == w * w;

    let mut chi = Multicoloring::new();
    for &p in lows.iter().chain(&ups) {
        chi.insert(p, ColorSet::new());
    }
    let sorted_edges: Vec<(PointId, PointId)> = board_edges.iter().copied().collect();
    let mut next = 1u32;
    for &(l, t) in &sorted_edges {
        chi.get_mut(&l).unwrap().insert(ColorId(next));
        chi.get_mut(&t).unwrap().insert(ColorId(next));
        next += 1;
    }
    if complete && w == 3 {
        let pairs = disjoint_pairs(&sorted_edges);
        let (e1, e2) = pairs[host_pick * pairs.len() / 4 % pairs.len()];
        for (l, t) in [e1, e2] {
            chi.get_mut(&l).unwrap().insert(ColorId(next));
            chi.get_mut(&t).unwrap().insert(ColorId(next));
            next += 1;
        }
    }

    let order = RegularBipartite::new(
        lows.iter().copied(),
        ups.iter().copied(),
        board_edges.iter().copied(),
    )
    .unwrap();
    let board = LocalBoard::new(order, chi)
        .unwrap_or_else(|e| panic!("({tag_lm}, {tag_mt}) board rejected: {e}"));
    let mv = LocalMove {
        middle: mids.iter().copied().collect(),
        edges_lm,
        edges_mt,
    };
    (board, mv, complete)
}

#[test]
fn every_shape_pair_is_answered_and_keeps_the_invariant() {
    let mut covered: BTreeSet<(CoreTag, CoreTag)> = BTreeSet::new();
    for w in 1..=3usize {
        let tags: Vec<CoreTag> = CoreTag::ALL
            .iter()
            .copied()
            .filter(|t| t.width() == w)
            .collect();
        let mperms: Vec<Vec<usize>> = (0..w).permutations(w).collect();
        for &a in &tags {
            for &b in &tags {
                for mperm in &mperms {
                    for host in 0..4usize {
                        for seed in [11u64, 42] {
                            let mix = seed
                                ^ ((host as u64) << 8)
                                ^ ((mperm[0] as u64) << 16)
                                ^ ((a as u64) << 24)
                                ^ ((b as u64) << 32);
                            let (board, mv, complete) = build_instance(a, b, mperm, host, mix);
                            if !complete && host > 0 {
                                continue; // hosts only vary on complete boards
                            }
                            let label = format!("({a}, {b}) mperm {mperm:?} host {host}");
                            verify_width3_invariant(&board)
                                .unwrap_or_else(|e| panic!("{label}: bad fixture: {e}"));
                            validate_local_move(&board, &mv, 2)
                                .unwrap_or_else(|e| panic!("{label}: illegal fixture move: {e}"));
                            let chi = local_round(&board, &mv)
                                .unwrap_or_else(|e| panic!("{label}: no answer: {e}"));
                            validate_local_coloring(&board, &mv, &chi, 2)
                                .unwrap_or_else(|e| panic!("{label}: illegal answer: {e}"));
                            for side in [KeepSide::Lower, KeepSide::Upper] {
                                let next = board.successor(&mv, &chi, side).unwrap();
                                verify_width3_invariant(&next).unwrap_or_else(|e| {
                                    panic!("{label}: invariant lost keeping {side:?}: {e}")
                                });
                            }
                            covered.insert((a, b));
                        }
                    }
                }
            }
        }
    }
    // 1 width-1 pair, 4 width-2 pairs, 36 width-3 pairs
    assert_eq!(covered.len(), 1 + 4 + 36);
}

#[test]
fn random_games_keep_the_palette_fixed_and_the_invariant_true() {
    for w in 1..=3usize {
        for seed in 0..6u64 {
            let mut alg = LocalCoreDisjoint::new();
            let mut spoiler = RandomLocalSource::new(seed);
            let history = referee_local(&mut alg, &mut spoiler, w, 40)
                .unwrap_or_else(|e| panic!("width {w} seed {seed}: {e}"));
            assert_eq!(history.len(), 40, "width {w} seed {seed} stopped early");
            let palette = history[0].palette();
            assert_eq!(palette.len(), [1, 4, 11][w - 1], "width {w} opening palette");
            for (round, board) in history.iter().enumerate() {
                assert!(
                    board.palette().is_subset(&palette),
                    "width {w} seed {seed} round {round}: palette grew"
                );
                verify_width3_invariant(board).unwrap_or_else(|e| {
                    panic!("width {w} seed {seed} round {round}: {e}")
                });
            }
        }
    }
}
