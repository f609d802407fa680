//! Randomized laws: the down-set recognizer agrees with brute-force 2+2
//! search, witnesses are always valid, and realize round-trips.

mod common;

use common::{random_interval_poset, random_poset, rng};
use interval_orders::{is_interval_order, oracle, realize, two_plus_two};

#[test]
fn recognizer_agrees_with_brute_force_on_small_posets() {
    let mut rng = rng(0x1f_2e_3d);
    for case in 0..300 {
        let n = 1 + (case % 8);
        let density = [0.15, 0.3, 0.5, 0.7][case % 4];
        let poset = random_poset(&mut rng, n, density);
        let fast = two_plus_two(&poset);
        let brute = oracle::two_plus_two_brute(&poset);
        assert_eq!(fast.is_some(), brute.is_some(), "disagreement on {poset:?}");
        if let Some(w) = fast {
            assert!(w.holds_in(&poset), "invalid witness {w} on {poset:?}");
        }
        if let Some(w) = brute {
            assert!(w.holds_in(&poset), "invalid brute witness {w} on {poset:?}");
        }
    }
}

#[test]
fn realize_round_trips_on_random_interval_orders() {
    let mut rng = rng(0xa5_0f);
    for case in 0..120 {
        let n = 1 + (case % 50);
        let poset = random_interval_poset(&mut rng, n, 40);
        assert!(is_interval_order(&poset));
        let rep = realize(&poset).unwrap();
        assert_eq!(rep.induced_poset(), poset, "round-trip failed at n={n}");
    }
}

#[test]
fn realize_errors_exactly_on_non_interval_orders() {
    let mut rng = rng(0xbeef);
    let mut witnesses = 0;
    for case in 0..200 {
        let n = 4 + (case % 5);
        let poset = random_poset(&mut rng, n, 0.35);
        match realize(&poset) {
            Ok(rep) => {
                assert!(oracle::is_interval_order_brute(&poset));
                assert_eq!(rep.induced_poset(), poset);
            }
            Err(interval_orders::IntervalError::NotIntervalOrder(w)) => {
                assert!(w.holds_in(&poset));
                witnesses += 1;
            }
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }
    assert!(witnesses > 0, "expected some non-interval posets in the mix");
}
