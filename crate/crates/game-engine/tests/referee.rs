//! Refereed games end-to-end: validation on both sides, dense chain
//! numbering, transcript round-trips, and the structural promises of the
//! stock sources.

use std::collections::BTreeSet;

use game_engine::sources::{
    AntichainSource, ChainSource, RandomPosetSource, RandomUpGrowingIntervalSource,
    RandomWidthSource, ReplaySource,
};
use game_engine::{
    assert_up_growing, check_transcript, parse_transcript, referee_online, referee_upgrowing,
    serialize_transcript, Arrival, GameError, OnlineReferee, Partitioner, StrategyError,
};
use poset_core::{PointId, Poset};

/// Greedy first-fit over the referee's view of the poset, kept deliberately
/// tiny: the real strategy crate gets its own exhaustive tests.
#[derive(Default)]
struct TinyFirstFit {
    chains: Vec<Vec<PointId>>,
}

impl Partitioner for TinyFirstFit {
    fn assign(&mut self, poset: &Poset, arrival: &Arrival) -> Result<usize, StrategyError> {
        let slot = self
            .chains
            .iter()
            .position(|chain| chain.iter().all(|&p| poset.lt(p, arrival.id)));
        let slot = slot.unwrap_or_else(|| {
            self.chains.push(Vec::new());
            self.chains.len() - 1
        });
        self.chains[slot].push(arrival.id);
        Ok(slot)
    }
}

/// Assigns every point to a chain keyed by an arbitrary large number; the
/// referee must renumber densely from 1.
struct WeirdKeys;

impl Partitioner for WeirdKeys {
    fn assign(&mut self, _poset: &Poset, arrival: &Arrival) -> Result<usize, StrategyError> {
        Ok(900 + arrival.id.0 as usize * 7)
    }
}

/// Puts everything on one chain no matter what.
struct OneChainAlways;

impl Partitioner for OneChainAlways {
    fn assign(&mut self, _poset: &Poset, _arrival: &Arrival) -> Result<usize, StrategyError> {
        Ok(0)
    }
}

#[test]
fn chain_source_needs_one_chain() {
    let mut alg = TinyFirstFit::default();
    let transcript = referee_online(&mut alg, &mut ChainSource::new(), 40).unwrap();
    let report = check_transcript(&transcript).unwrap();
    assert_eq!(report.chains, 1);
    assert_eq!(report.width, 1);
    assert_eq!(report.points, 40);
}

#[test]
fn antichain_source_needs_a_chain_per_point() {
    let mut alg = TinyFirstFit::default();
    let transcript = referee_online(&mut alg, &mut AntichainSource::new(), 12).unwrap();
    let report = check_transcript(&transcript).unwrap();
    assert_eq!(report.chains, 12);
    assert_eq!(report.width, 12);
    assert_eq!(format!("{report}"), "chains=12 width=12 points=12");
}

#[test]
fn chain_indices_are_renumbered_densely() {
    let mut alg = WeirdKeys;
    let transcript = referee_online(&mut alg, &mut ChainSource::new(), 5).unwrap();
    // Distinct raw keys per point, so dense chains must be 1, 2, 3, 4, 5.
    let chains: Vec<usize> = transcript.rounds().map(|(_, chain)| chain).collect();
    assert_eq!(chains, vec![1, 2, 3, 4, 5]);
}

#[test]
fn spoiler_illegal_moves_are_rejected() {
    let cases: Vec<(Vec<Arrival>, &str)> = vec![
        (
            vec![Arrival::new(PointId(0), []), Arrival::new(PointId(0), [])],
            "already presented",
        ),
        (
            vec![Arrival::new(PointId(0), [PointId(7)])],
            "unknown predecessor",
        ),
        (
            // 0 < 1 and then 2 above 1 but allegedly not above 0.
            vec![
                Arrival::new(PointId(0), []),
                Arrival::new(PointId(1), [PointId(0)]),
                Arrival::new(PointId(2), [PointId(1)]),
            ],
            "not transitively closed",
        ),
    ];
    for (arrivals, needle) in cases {
        let mut alg = TinyFirstFit::default();
        let mut spoiler = ReplaySource::new(arrivals);
        let err = referee_online(&mut alg, &mut spoiler, 10).unwrap_err();
        match &err {
            GameError::SpoilerIllegalMove { reason, .. } => {
                assert!(reason.contains(needle), "{err}: expected {needle}")
            }
            other => panic!("expected a spoiler verdict, got {other}"),
        }
    }
}

#[test]
fn algorithm_breaking_a_chain_is_rejected() {
    let mut alg = OneChainAlways;
    let err = referee_online(&mut alg, &mut AntichainSource::new(), 3).unwrap_err();
    match err {
        GameError::AlgorithmIllegalMove { round, id, reason } => {
            assert_eq!(round, 2);
            assert_eq!(id, PointId(1));
            assert!(reason.contains("not above chain member"), "{reason}");
        }
        other => panic!("expected an algorithm verdict, got {other}"),
    }
}

#[test]
fn algorithm_strategy_failure_is_an_illegal_move() {
    struct GivesUp;
    impl Partitioner for GivesUp {
        fn assign(&mut self, _: &Poset, _: &Arrival) -> Result<usize, StrategyError> {
            Err(StrategyError("out of ideas".into()))
        }
    }
    let err = referee_online(&mut GivesUp, &mut ChainSource::new(), 1).unwrap_err();
    assert!(matches!(err, GameError::AlgorithmIllegalMove { .. }));
    assert!(err.to_string().contains("out of ideas"));
}

#[test]
fn a_point_below_an_existing_one_is_not_up_growing() {
    // Arrivals carry down-sets, so a refereed game only sees maximal
    // insertions; the direct checker still guards hand-built posets.
    let mut poset = Poset::new();
    poset.add_point(PointId(0), &BTreeSet::new()).unwrap();
    poset
        .add_point(PointId(1), &[PointId(0)].into_iter().collect())
        .unwrap();
    let err = assert_up_growing(&poset, PointId(0), 1).unwrap_err();
    assert_eq!(
        err,
        GameError::NotUpGrowing {
            round: 1,
            id: PointId(0),
            above: PointId(1),
        }
    );
    assert_up_growing(&poset, PointId(1), 2).unwrap();
}

#[test]
fn up_growing_referee_accepts_all_arrival_streams() {
    let mut alg = TinyFirstFit::default();
    let mut spoiler = RandomPosetSource::new(11);
    let transcript = referee_upgrowing(&mut alg, &mut spoiler, 60).unwrap();
    assert_eq!(transcript.len(), 60);
}

#[test]
fn stepwise_referee_exposes_state() {
    let mut alg = TinyFirstFit::default();
    let mut referee = OnlineReferee::new(&mut alg);
    assert_eq!(referee.step(Arrival::new(PointId(4), [])).unwrap(), 1);
    assert_eq!(
        referee
            .step(Arrival::new(PointId(9), [PointId(4)]))
            .unwrap(),
        1
    );
    assert_eq!(referee.step(Arrival::new(PointId(2), [])).unwrap(), 2);
    assert_eq!(referee.chain_count(), 2);
    assert_eq!(referee.chains()[0], vec![PointId(4), PointId(9)]);
    assert_eq!(referee.poset().len(), 3);
    let transcript = referee.into_transcript();
    assert_eq!(transcript.chain_of(PointId(2)), Some(2));
}

#[test]
fn random_poset_games_produce_valid_transcripts() {
    for seed in 0..10 {
        let mut alg = TinyFirstFit::default();
        let mut spoiler = RandomPosetSource::new(seed);
        let transcript = referee_online(&mut alg, &mut spoiler, 120).unwrap();
        let report = check_transcript(&transcript).unwrap();
        assert_eq!(report.points, 120);
        assert_eq!(report.width, transcript.poset().width());
        assert!(report.chains >= report.width);
    }
}

#[test]
fn random_width_source_hits_its_cap_exactly() {
    for width in 1..=4 {
        for seed in 0..5 {
            let mut alg = TinyFirstFit::default();
            let mut spoiler = RandomWidthSource::new(width, seed);
            let transcript = referee_online(&mut alg, &mut spoiler, 150).unwrap();
            assert_eq!(transcript.poset().width(), width, "seed {seed}");
        }
    }
}

#[test]
fn random_interval_source_is_an_up_growing_interval_order() {
    for width in 2..=4 {
        let mut alg = TinyFirstFit::default();
        let mut spoiler = RandomUpGrowingIntervalSource::new(width, 5);
        let transcript = referee_upgrowing(&mut alg, &mut spoiler, 120).unwrap();
        let poset = transcript.poset();
        assert_eq!(poset.width(), width);
        assert!(interval_orders::is_interval_order(&poset));
    }
}

#[test]
fn replay_source_reproduces_a_poset_exactly() {
    let mut spoiler = RandomPosetSource::new(3);
    let mut alg = TinyFirstFit::default();
    let transcript = referee_online(&mut alg, &mut spoiler, 50).unwrap();
    let poset = transcript.poset();

    let mut alg2 = TinyFirstFit::default();
    let mut replay = ReplaySource::from_poset(&poset);
    let transcript2 = referee_online(&mut alg2, &mut replay, usize::MAX).unwrap();
    assert_eq!(transcript2.poset(), poset);
    assert_eq!(transcript, transcript2);

    let mut alg3 = TinyFirstFit::default();
    let mut replay = ReplaySource::from_transcript(&transcript);
    let transcript3 = referee_online(&mut alg3, &mut replay, usize::MAX).unwrap();
    assert_eq!(transcript3, transcript);
}

proptest::proptest! {
    #[test]
    fn transcripts_round_trip_through_text(seed in 0u64..500) {
        let mut alg = TinyFirstFit::default();
        let mut spoiler = RandomPosetSource::new(seed);
        let transcript = referee_online(&mut alg, &mut spoiler, 30).unwrap();
        check_transcript(&transcript).unwrap();
        let text = serialize_transcript(&transcript).unwrap();
        let back = parse_transcript(&text).unwrap();
        proptest::prop_assert_eq!(&back, &transcript);
        let again = serialize_transcript(&back).unwrap();
        proptest::prop_assert_eq!(again, text);
    }
}
