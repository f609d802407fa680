//! Refereed games for the composed width ≤ 3 partitioner: chain bounds on
//! random width-capped posets, the structural invariant after every single
//! arrival, and agreement between the state's chains and the transcript.

use std::collections::BTreeMap;

use algorithms::{composed_chain_bound, verify_reduction, ComposedW3, ReductionState};
use game_engine::sources::RandomWidthSource;
use game_engine::{check_transcript, referee_online, ChainTranscript, GameView, PointSource};

/// Plays `rounds` points of a seeded width-capped random poset and returns
/// the finished wrapper together with the transcript.
fn play(width: usize, seed: u64, rounds: usize) -> (ComposedW3, game_engine::ChainTranscript) {
    let mut alg = ComposedW3::new();
    let mut spoiler = RandomWidthSource::new(width, seed);
    let transcript = referee_online(&mut alg, &mut spoiler, rounds).expect("legal game");
    (alg, transcript)
}

#[test]
fn chain_bounds_hold_on_random_width_capped_posets() {
    for width in 1..=3 {
        let bound = composed_chain_bound(width).unwrap();
        for seed in 0..6 {
            let (alg, transcript) = play(width, seed, 120);
            let report = check_transcript(&transcript).expect("valid transcript");
            assert_eq!(report.points, 120);
            assert!(report.width <= width, "seed {seed}: width {}", report.width);
            assert!(
                report.chains <= bound,
                "width {width} seed {seed}: {} chains exceed the bound {bound}",
                report.chains
            );
            verify_reduction(alg.state()).expect("final invariant");
        }
    }
}

#[test]
fn the_invariant_holds_after_every_arrival() {
    for width in 1..=3 {
        for seed in [11, 42] {
            let mut state = ReductionState::new();
            let mut spoiler = RandomWidthSource::new(width, seed);
            let transcript = ChainTranscript::new();
            for round in 0..60 {
                let view = GameView {
                    poset: state.poset(),
                    transcript: &transcript,
                };
                let arrival = spoiler.next_point(view).expect("endless source");
                state.insert(arrival.id, &arrival.down_set).expect("legal arrival");
                verify_reduction(&state)
                    .unwrap_or_else(|e| panic!("width {width} seed {seed} round {round}: {e}"));
            }
        }
    }
}

#[test]
fn state_chains_agree_with_the_transcript() {
    let (alg, transcript) = play(3, 5, 150);
    // Two points share a transcript chain exactly when the state assigned
    // them the same (level, color) pair.
    let mut seen: BTreeMap<usize, (usize, game_engine::ColorId)> = BTreeMap::new();
    for (arrival, chain) in transcript.rounds() {
        let pair = alg.state().chain_of(arrival.id).expect("assigned point");
        match seen.get(&chain) {
            Some(&prev) => assert_eq!(prev, pair, "chain {chain} maps to two pairs"),
            None => {
                assert!(
                    !seen.values().any(|&p| p == pair),
                    "pair {pair:?} maps to two chains"
                );
                seen.insert(chain, pair);
            }
        }
    }
}
