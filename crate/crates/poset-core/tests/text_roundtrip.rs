//! Property tests for the text format: parse ∘ serialize is the identity on
//! posets, and serialize ∘ parse is the identity on canonical files.

use std::collections::BTreeSet;

use poset_core::text::{parse_poset, serialize_poset};
use poset_core::{PointId, Poset};
use proptest::prelude::*;

/// Build a poset from a list of predecessor masks: point k takes bit i of
/// `masks[k]` to mean "point i is a predecessor".
fn poset_from_masks(masks: &[u16]) -> Poset {
    let mut p = Poset::new();
    for (k, &mask) in masks.iter().enumerate() {
        let preds: BTreeSet<PointId> = (0..k)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| PointId(i as i64))
            .collect();
        p.add_point(PointId(k as i64), &preds).unwrap();
    }
    p
}

proptest! {
    #[test]
    fn parse_serialize_round_trip(masks in prop::collection::vec(any::<u16>(), 0..12)) {
        let poset = poset_from_masks(&masks);
        let text = serialize_poset(&poset).unwrap();
        let parsed = parse_poset(&text).unwrap();
        prop_assert_eq!(&parsed, &poset);
        // Canonical files are bit-exact fixed points.
        prop_assert_eq!(serialize_poset(&parsed).unwrap(), text);
    }

    #[test]
    fn closure_is_recomputed_from_any_predecessor_listing(masks in prop::collection::vec(any::<u16>(), 1..10)) {
        let poset = poset_from_masks(&masks);
        // Serialize with FULL down-sets instead of covers; parsing must give
        // the same poset.
        let mut text = String::new();
        for &id in poset.insertion_order() {
            text.push_str(&format!("p {id}"));
            for q in poset.down_set(id) {
                text.push_str(&format!(" {q}"));
            }
            text.push('\n');
        }
        let parsed = parse_poset(&text).unwrap();
        prop_assert_eq!(parsed, poset);
    }
}
