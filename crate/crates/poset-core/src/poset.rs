use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use crate::matching::max_matching;
use crate::{PointId, PosetError};

/// A finite strict partially ordered set.
///
/// The relation is kept transitively closed on every insertion. Points can
/// only be added above a set of existing predecessors, so the newest point is
/// always maximal — exactly the way points are presented in the on-line
/// games this workspace plays.
#[derive(Clone, Debug, Default)]
pub struct Poset {
    /// Point ids in insertion order; the position is the internal index.
    ids: Vec<PointId>,
    /// Id → internal index. Iteration order doubles as "ascending by id".
    index: BTreeMap<PointId, usize>,
    /// `below[i]` = indices of the strict down-set of `i`.
    below: Vec<FixedBitSet>,
    /// `above[i]` = indices of the strict up-set of `i`.
    above: Vec<FixedBitSet>,
}

impl PartialEq for Poset {
    /// Abstract equality: same point ids and same order relation,
    /// independent of the order in which the points were inserted.
    fn eq(&self, other: &Self) -> bool {
        if self.index.len() != other.index.len() {
            return false;
        }
        self.index.keys().zip(other.index.keys()).all(|(a, b)| a == b)
            && self
                .index
                .keys()
                .all(|&p| self.down_set(p) == other.down_set(p))
    }
}

impl Eq for Poset {}

impl Poset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: PointId) -> bool {
        self.index.contains_key(&id)
    }

    /// All point ids in ascending order.
    pub fn points(&self) -> impl Iterator<Item = PointId> + '_ {
        self.index.keys().copied()
    }

    /// Point ids in the order they were inserted.
    pub fn insertion_order(&self) -> &[PointId] {
        &self.ids
    }

    fn idx(&self, id: PointId) -> usize {
        match self.index.get(&id) {
            Some(&i) => i,
            None => panic!("point {id} is not a member of the poset"),
        }
    }

    /// Inserts `id` above the transitive closure of `predecessors`,
    /// incomparable to everything else. The new point is maximal.
    pub fn add_point(
        &mut self,
        id: PointId,
        predecessors: &BTreeSet<PointId>,
    ) -> Result<(), PosetError> {
        if self.contains(id) {
            return Err(PosetError::DuplicateId(id));
        }
        let mut pred_idx = Vec::with_capacity(predecessors.len());
        for &p in predecessors {
            match self.index.get(&p) {
                Some(&i) => pred_idx.push(i),
                None => return Err(PosetError::UnknownPredecessor { point: id, pred: p }),
            }
        }
        let n = self.ids.len();
        for row in self.below.iter_mut().chain(self.above.iter_mut()) {
            row.grow(n + 1);
        }
        let mut down = FixedBitSet::with_capacity(n + 1);
        for &i in &pred_idx {
            down.insert(i);
            down.union_with(&self.below[i]);
        }
        for i in down.ones() {
            self.above[i].insert(n);
        }
        self.below.push(down);
        self.above.push(FixedBitSet::with_capacity(n + 1));
        self.ids.push(id);
        self.index.insert(id, n);
        Ok(())
    }

    /// Strict order test. Panics if either id is not a member.
    pub fn lt(&self, a: PointId, b: PointId) -> bool {
        self.below[self.idx(b)].contains(self.idx(a))
    }

    pub fn le(&self, a: PointId, b: PointId) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn comparable(&self, a: PointId, b: PointId) -> bool {
        self.lt(a, b) || self.lt(b, a)
    }

    pub fn incomparable(&self, a: PointId, b: PointId) -> bool {
        a != b && !self.comparable(a, b)
    }

    /// The strict down-set of `id`.
    pub fn down_set(&self, id: PointId) -> BTreeSet<PointId> {
        self.below[self.idx(id)]
            .ones()
            .map(|i| self.ids[i])
            .collect()
    }

    /// The strict up-set of `id`.
    pub fn up_set(&self, id: PointId) -> BTreeSet<PointId> {
        self.above[self.idx(id)]
            .ones()
            .map(|i| self.ids[i])
            .collect()
    }

    /// Size of the strict down-set of `id`, without materializing it.
    pub fn down_set_len(&self, id: PointId) -> usize {
        self.below[self.idx(id)].count_ones(..)
    }

    /// Size of the strict up-set of `id`, without materializing it.
    pub fn up_set_len(&self, id: PointId) -> usize {
        self.above[self.idx(id)].count_ones(..)
    }

    /// Immediate predecessors: the maximal elements of the down-set.
    pub fn covers(&self, id: PointId) -> BTreeSet<PointId> {
        let i = self.idx(id);
        self.below[i]
            .ones()
            .filter(|&q| self.above[q].is_disjoint(&self.below[i]))
            .map(|q| self.ids[q])
            .collect()
    }

    pub fn is_maximal(&self, id: PointId) -> bool {
        self.above[self.idx(id)].count_ones(..) == 0
    }

    pub fn maximal_points(&self) -> Vec<PointId> {
        let mut out: Vec<PointId> = (0..self.ids.len())
            .filter(|&i| self.above[i].count_ones(..) == 0)
            .map(|i| self.ids[i])
            .collect();
        out.sort();
        out
    }

    pub fn minimal_points(&self) -> Vec<PointId> {
        let mut out: Vec<PointId> = (0..self.ids.len())
            .filter(|&i| self.below[i].count_ones(..) == 0)
            .map(|i| self.ids[i])
            .collect();
        out.sort();
        out
    }

    fn full_mask(&self) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.ids.len());
        m.insert_range(..);
        m
    }

    /// Resolves a set of ids to an index mask; panics on unknown ids.
    fn mask_of(&self, set: &BTreeSet<PointId>) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.ids.len());
        for &p in set {
            m.insert(self.idx(p));
        }
        m
    }

    fn ids_of_mask(&self, mask: &FixedBitSet) -> BTreeSet<PointId> {
        mask.ones().map(|i| self.ids[i]).collect()
    }

    /// Indices incomparable to `i` (excluding `i` itself).
    fn incomparable_mask(&self, i: usize) -> FixedBitSet {
        let mut m = self.full_mask();
        m.difference_with(&self.below[i]);
        m.difference_with(&self.above[i]);
        m.remove(i);
        m
    }

    fn width_of_mask(&self, mask: &FixedBitSet) -> usize {
        let size = max_matching(&self.above, mask, mask).size;
        mask.count_ones(..) - size
    }

    /// The width of the poset: the size of a maximum antichain, computed as
    /// the size of a minimum chain cover via bipartite matching over the
    /// (closed) comparability relation.
    pub fn width(&self) -> usize {
        self.width_of_mask(&self.full_mask())
    }

    /// Width of the subposet induced by `restrict`. Panics on unknown ids.
    pub fn width_of(&self, restrict: &BTreeSet<PointId>) -> usize {
        self.width_of_mask(&self.mask_of(restrict))
    }

    /// A minimum chain partition; the number of chains equals the width.
    ///
    /// Chains follow the edges of a maximum matching between out- and
    /// in-copies of the points; the result is deterministic and sorted by
    /// the id of each chain's bottom point.
    pub fn min_chain_partition(&self) -> ChainPartition {
        let full = self.full_mask();
        let m = max_matching(&self.above, &full, &full);
        let mut chains = Vec::new();
        for head in 0..self.ids.len() {
            if m.match_right[head].is_some() {
                continue;
            }
            let mut chain = vec![self.ids[head]];
            let mut cur = head;
            while let Some(next) = m.match_left[cur] {
                chain.push(self.ids[next]);
                cur = next;
            }
            chains.push(chain);
        }
        chains.sort_by_key(|c| c[0]);
        ChainPartition { chains }
    }

    /// The lexicographically smallest maximum antichain of the subposet
    /// induced by `restrict` (compare the sorted id sequences).
    ///
    /// Greedy: repeatedly take the smallest id that still extends to a
    /// maximum antichain, shrinking the candidate region as it goes.
    pub fn max_antichain(&self, restrict: &BTreeSet<PointId>) -> Antichain {
        let mut region = self.mask_of(restrict);
        let mut need = self.width_of_mask(&region);
        let mut members = BTreeSet::new();
        while need > 0 {
            let mut picked = false;
            for (&id, &i) in &self.index {
                if !region.contains(i) {
                    continue;
                }
                let mut next = self.incomparable_mask(i);
                next.intersect_with(&region);
                if self.width_of_mask(&next) == need - 1 {
                    members.insert(id);
                    region = next;
                    need -= 1;
                    picked = true;
                    break;
                }
            }
            assert!(picked, "greedy antichain extension must always succeed");
        }
        Antichain { members }
    }

    /// The subposet induced by `restrict`, preserving insertion order.
    pub fn restriction(&self, restrict: &BTreeSet<PointId>) -> Poset {
        let mask = self.mask_of(restrict);
        let mut out = Poset::new();
        for i in 0..self.ids.len() {
            if !mask.contains(i) {
                continue;
            }
            let preds: BTreeSet<PointId> = self.below[i]
                .ones()
                .filter(|&q| mask.contains(q))
                .map(|q| self.ids[q])
                .collect();
            out.add_point(self.ids[i], &preds)
                .expect("restriction preserves insertion validity");
        }
        out
    }

    /// Validates that `members` is an antichain here and wraps it.
    pub fn antichain(
        &self,
        members: impl IntoIterator<Item = PointId>,
    ) -> Result<Antichain, PosetError> {
        let members: BTreeSet<PointId> = members.into_iter().collect();
        for &p in &members {
            if !self.contains(p) {
                return Err(PosetError::UnknownPoint(p));
            }
        }
        for &a in &members {
            for &b in &members {
                if self.lt(a, b) {
                    return Err(PosetError::NotAntichain { a, b });
                }
            }
        }
        Ok(Antichain { members })
    }

    pub fn is_maximum_antichain(&self, a: &Antichain) -> bool {
        a.members.iter().all(|&p| self.contains(p)) && a.len() == self.width()
    }

    fn require_maximum(&self, a: &Antichain) -> Result<(), PosetError> {
        if !self.is_maximum_antichain(a) {
            return Err(PosetError::NotMaximumAntichain {
                size: a.len(),
                width: self.width(),
            });
        }
        Ok(())
    }

    /// The lattice order on maximum antichains: `a ⊴ b` iff every point of
    /// `a` lies below or equals some point of `b`.
    pub fn ma_le(&self, a: &Antichain, b: &Antichain) -> Result<bool, PosetError> {
        self.require_maximum(a)?;
        self.require_maximum(b)?;
        Ok(a.iter().all(|p| b.iter().any(|q| self.le(p, q))))
    }

    /// Join in the lattice of maximum antichains: the maximal elements
    /// of `a ∪ b`.
    pub fn ma_join(&self, a: &Antichain, b: &Antichain) -> Result<Antichain, PosetError> {
        self.require_maximum(a)?;
        self.require_maximum(b)?;
        let union: BTreeSet<PointId> = a.iter().chain(b.iter()).collect();
        let members = self.maximal_in(&union);
        let join = Antichain { members };
        debug_assert!(self.is_maximum_antichain(&join));
        Ok(join)
    }

    /// Meet in the lattice of maximum antichains: the minimal elements
    /// of `a ∪ b`.
    pub fn ma_meet(&self, a: &Antichain, b: &Antichain) -> Result<Antichain, PosetError> {
        self.require_maximum(a)?;
        self.require_maximum(b)?;
        let union: BTreeSet<PointId> = a.iter().chain(b.iter()).collect();
        let members = self.minimal_in(&union);
        let meet = Antichain { members };
        debug_assert!(self.is_maximum_antichain(&meet));
        Ok(meet)
    }

    /// Maximal elements of an arbitrary subset.
    pub fn maximal_in(&self, set: &BTreeSet<PointId>) -> BTreeSet<PointId> {
        set.iter()
            .copied()
            .filter(|&p| !set.iter().any(|&q| self.lt(p, q)))
            .collect()
    }

    /// Minimal elements of an arbitrary subset.
    pub fn minimal_in(&self, set: &BTreeSet<PointId>) -> BTreeSet<PointId> {
        set.iter()
            .copied()
            .filter(|&p| !set.iter().any(|&q| self.lt(q, p)))
            .collect()
    }

    /// The closed up-set of an antichain: the antichain together with
    /// everything above it.
    pub fn up_closure(&self, a: &Antichain) -> BTreeSet<PointId> {
        let mut mask = FixedBitSet::with_capacity(self.ids.len());
        for p in a.iter() {
            let i = self.idx(p);
            mask.insert(i);
            mask.union_with(&self.above[i]);
        }
        self.ids_of_mask(&mask)
    }

    /// Whether `a` is a high antichain: no antichain in the closed up-set of
    /// `a` is as large as `a` except `a` itself. The empty antichain is not
    /// considered high.
    pub fn is_high(&self, a: &Antichain) -> bool {
        if a.is_empty() {
            return false;
        }
        let up = self.up_closure(a);
        if self.width_of(&up) != a.len() {
            return false;
        }
        match self.hma(&up) {
            Ok(h) => h == *a,
            Err(_) => false,
        }
    }

    /// The highest maximum antichain of the subposet induced by `restrict`:
    /// the top of its maximum-antichain lattice, computed as the maximal
    /// elements of the union of all maximum antichains.
    pub fn hma(&self, restrict: &BTreeSet<PointId>) -> Result<Antichain, PosetError> {
        if restrict.is_empty() {
            return Err(PosetError::EmptyRestriction);
        }
        let region = self.mask_of(restrict);
        let w = self.width_of_mask(&region);
        // A point lies in some maximum antichain iff the points of the
        // region incomparable to it still span width w - 1.
        let mut union = BTreeSet::new();
        for i in region.ones() {
            let mut inc = self.incomparable_mask(i);
            inc.intersect_with(&region);
            if self.width_of_mask(&inc) == w - 1 {
                union.insert(self.ids[i]);
            }
        }
        let members = self.maximal_in(&union);
        let hma = Antichain { members };
        debug_assert_eq!(hma.len(), w);
        Ok(hma)
    }
}

/// A set of pairwise incomparable points of some host poset.
///
/// Construct through [`Poset::antichain`] (validated) or detach one from a
/// computation such as [`Poset::max_antichain`]. Ordering is lexicographic
/// on the sorted id sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Antichain {
    members: BTreeSet<PointId>,
}

impl Antichain {
    pub fn members(&self) -> &BTreeSet<PointId> {
        &self.members
    }

    pub fn into_members(self) -> BTreeSet<PointId> {
        self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = PointId> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.members.contains(&p)
    }
}

/// A partition of a poset into chains, each listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPartition {
    chains: Vec<Vec<PointId>>,
}

impl ChainPartition {
    pub fn chains(&self) -> &[Vec<PointId>] {
        &self.chains
    }

    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    /// Checks the partition invariants against a poset: chains disjoint,
    /// union covering, every chain totally ordered bottom to top.
    pub fn is_valid_for(&self, poset: &Poset) -> bool {
        let mut seen = BTreeSet::new();
        for chain in &self.chains {
            for pair in chain.windows(2) {
                if !poset.lt(pair[0], pair[1]) {
                    return false;
                }
            }
            for &p in chain {
                if !seen.insert(p) {
                    return false;
                }
            }
        }
        seen.len() == poset.len() && poset.points().all(|p| seen.contains(&p))
    }
}
