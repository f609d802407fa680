//! Property test: the `i`-line format round-trips bit-exactly.

mod common;

use interval_orders::text::{parse_intervals, serialize_intervals};
use interval_orders::IntervalRep;
use num_bigint::BigInt;
use num_rational::BigRational;
use poset_core::PointId;
use proptest::prelude::*;

fn rep_strategy() -> impl Strategy<Value = IntervalRep> {
    // (id, left numerator, positive denominator, positive length numerator)
    prop::collection::btree_map(0i64..200, ((-50i64..50), (1i64..6), (1i64..40)), 0..25).prop_map(
        |entries| {
            let mut rep = IntervalRep::new();
            for (id, (ln, d, len)) in entries {
                let left = BigRational::new(BigInt::from(ln), BigInt::from(d));
                let right = &left + BigRational::new(BigInt::from(len), BigInt::from(d));
                rep.insert(PointId(id), left, right).unwrap();
            }
            rep
        },
    )
}

proptest! {
    #[test]
    fn parse_inverts_serialize(rep in rep_strategy()) {
        let text = serialize_intervals(&rep).unwrap();
        prop_assert_eq!(parse_intervals(&text).unwrap(), rep);
    }

    #[test]
    fn serialized_form_is_canonical(rep in rep_strategy()) {
        let text = serialize_intervals(&rep).unwrap();
        let reparsed = parse_intervals(&text).unwrap();
        prop_assert_eq!(serialize_intervals(&reparsed).unwrap(), text);
    }
}
