//! Anchor tests on a fixed 8-point poset whose lattice of maximum antichains
//! is known by hand, plus a couple of degenerate shapes.

use std::collections::BTreeSet;

use poset_core::{oracle, PointId, Poset};

const A: PointId = PointId(0);
const B: PointId = PointId(1);
const C: PointId = PointId(2);
const D: PointId = PointId(3);
const E: PointId = PointId(4);
const F: PointId = PointId(5);
const G: PointId = PointId(6);
const H: PointId = PointId(7);

/// The example poset: a < {c,d,e,f,g,h}, b < {e,f,g,h}, c < {f,g,h},
/// d < {f,h}, e < {g,h}, f < h, g < h, and nothing else.
fn p0() -> Poset {
    let mut p = Poset::new();
    let downs: &[(PointId, &[PointId])] = &[
        (A, &[]),
        (B, &[]),
        (C, &[A]),
        (D, &[A]),
        (E, &[A, B]),
        (F, &[A, B, C, D]),
        (G, &[A, B, C, E]),
        (H, &[A, B, C, D, E, F, G]),
    ];
    for &(id, preds) in downs {
        p.add_point(id, &preds.iter().copied().collect()).unwrap();
    }
    p
}

fn set(ids: &[PointId]) -> BTreeSet<PointId> {
    ids.iter().copied().collect()
}

#[test]
fn p0_has_the_advertised_comparabilities() {
    let p = p0();
    let expected: &[(PointId, &[PointId])] = &[
        (A, &[C, D, E, F, G, H]),
        (B, &[E, F, G, H]),
        (C, &[F, G, H]),
        (D, &[F, H]),
        (E, &[G, H]),
        (F, &[H]),
        (G, &[H]),
    ];
    for &(lo, ups) in expected {
        assert_eq!(p.up_set(lo), set(ups), "up-set of {lo}");
    }
    let pairs = p
        .points()
        .flat_map(|x| p.points().map(move |y| (x, y)))
        .filter(|&(x, y)| p.lt(x, y))
        .count();
    let advertised: usize = expected.iter().map(|(_, ups)| ups.len()).sum();
    assert_eq!(pairs, advertised, "no extra comparabilities");
}

#[test]
fn p0_width_and_chain_partition() {
    let p = p0();
    assert_eq!(p.width(), 3);
    assert_eq!(oracle::width_brute(&p), 3);
    let partition = p.min_chain_partition();
    assert_eq!(partition.chain_count(), 3);
    assert!(partition.is_valid_for(&p));
}

#[test]
fn p0_maximum_antichain_lattice() {
    let p = p0();
    assert_eq!(
        oracle::maximum_antichains(&p),
        vec![set(&[B, C, D]), set(&[C, D, E])]
    );
    assert_eq!(*p.max_antichain(&p.points().collect()).members(), set(&[B, C, D]));
    assert_eq!(
        *p.max_antichain(&set(&[B, C, D, E])).members(),
        set(&[B, C, D])
    );

    let bcd = p.antichain([B, C, D]).unwrap();
    let cde = p.antichain([C, D, E]).unwrap();
    assert_eq!(*p.ma_join(&bcd, &cde).unwrap().members(), set(&[C, D, E]));
    assert_eq!(*p.ma_meet(&bcd, &cde).unwrap().members(), set(&[B, C, D]));
    assert_eq!(
        oracle::ma_join_brute(&p, bcd.members(), cde.members()),
        set(&[C, D, E])
    );
    assert!(p.ma_le(&bcd, &cde).unwrap());
    assert!(!p.ma_le(&cde, &bcd).unwrap());

    let chain = p.antichain([H]).unwrap();
    assert!(matches!(
        p.ma_join(&bcd, &chain),
        Err(poset_core::PosetError::NotMaximumAntichain { size: 1, width: 3 })
    ));
}

#[test]
fn p0_high_antichains() {
    let p = p0();
    assert_eq!(*p.hma(&p.points().collect()).unwrap().members(), set(&[C, D, E]));
    assert_eq!(oracle::hma_brute(&p), set(&[C, D, E]));
    let bcd = p.antichain([B, C, D]).unwrap();
    let cde = p.antichain([C, D, E]).unwrap();
    assert!(!p.is_high(&bcd));
    assert!(p.is_high(&cde));
    assert!(!oracle::is_high_brute(&p, bcd.members()));
    assert!(oracle::is_high_brute(&p, cde.members()));
}

#[test]
fn degenerate_shapes() {
    let mut chain = Poset::new();
    for i in 0..5 {
        let preds = if i == 0 { BTreeSet::new() } else { set(&[PointId(i - 1)]) };
        chain.add_point(PointId(i), &preds).unwrap();
    }
    assert_eq!(chain.width(), 1);
    assert_eq!(chain.min_chain_partition().chain_count(), 1);
    assert_eq!(
        *chain.max_antichain(&chain.points().collect()).members(),
        set(&[PointId(0)])
    );
    assert_eq!(
        *chain.hma(&chain.points().collect()).unwrap().members(),
        set(&[PointId(4)]),
        "the highest maximum antichain of a chain is its maximum"
    );

    let mut anti = Poset::new();
    for i in 0..5 {
        anti.add_point(PointId(i), &BTreeSet::new()).unwrap();
    }
    assert_eq!(anti.width(), 5);
    assert_eq!(anti.min_chain_partition().chain_count(), 5);

    let empty = Poset::new();
    assert_eq!(empty.width(), 0);
    assert_eq!(empty.min_chain_partition().chain_count(), 0);
    assert!(empty.hma(&BTreeSet::new()).is_err());
}

#[test]
fn add_point_errors() {
    let mut p = Poset::new();
    p.add_point(PointId(0), &BTreeSet::new()).unwrap();
    assert_eq!(
        p.add_point(PointId(0), &BTreeSet::new()),
        Err(poset_core::PosetError::DuplicateId(PointId(0)))
    );
    assert_eq!(
        p.add_point(PointId(1), &set(&[PointId(9)])),
        Err(poset_core::PosetError::UnknownPredecessor {
            point: PointId(1),
            pred: PointId(9)
        })
    );
    // Transitivity through a middle point.
    p.add_point(PointId(1), &set(&[PointId(0)])).unwrap();
    p.add_point(PointId(2), &set(&[PointId(1)])).unwrap();
    assert!(p.lt(PointId(0), PointId(2)));
}
