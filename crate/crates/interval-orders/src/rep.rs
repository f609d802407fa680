use std::collections::BTreeMap;

use num_rational::BigRational;
use poset_core::{PointId, Poset};

use crate::error::IntervalError;

/// Exact rational endpoint of an interval.
pub type Endpoint = BigRational;

/// An assignment of nondegenerate closed intervals `[left, right]` with
/// `left < right` to points. The induced order is `x < y` iff
/// `right(x) < left(y)`; overlapping intervals are incomparable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalRep {
    intervals: BTreeMap<PointId, (Endpoint, Endpoint)>,
}

impl IntervalRep {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a representation from `(id, left, right)` triples.
    pub fn from_triples<I>(triples: I) -> Result<Self, IntervalError>
    where
        I: IntoIterator<Item = (PointId, Endpoint, Endpoint)>,
    {
        let mut rep = Self::new();
        for (id, l, r) in triples {
            rep.insert(id, l, r)?;
        }
        Ok(rep)
    }

    /// Adds one interval. Fails on duplicate ids and on `left >= right`.
    pub fn insert(
        &mut self,
        id: PointId,
        left: Endpoint,
        right: Endpoint,
    ) -> Result<(), IntervalError> {
        if left >= right {
            return Err(IntervalError::DegenerateInterval(id));
        }
        if self.intervals.contains_key(&id) {
            return Err(IntervalError::DuplicatePoint(id));
        }
        self.intervals.insert(id, (left, right));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, id: PointId) -> bool {
        self.intervals.contains_key(&id)
    }

    pub fn get(&self, id: PointId) -> Option<(&Endpoint, &Endpoint)> {
        self.intervals.get(&id).map(|(l, r)| (l, r))
    }

    /// Left endpoint. Panics if the point has no interval.
    pub fn left(&self, id: PointId) -> &Endpoint {
        &self.intervals[&id].0
    }

    /// Right endpoint. Panics if the point has no interval.
    pub fn right(&self, id: PointId) -> &Endpoint {
        &self.intervals[&id].1
    }

    /// Points in ascending id order.
    pub fn points(&self) -> impl Iterator<Item = PointId> + '_ {
        self.intervals.keys().copied()
    }

    /// `(id, left, right)` in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = (PointId, &Endpoint, &Endpoint)> + '_ {
        self.intervals.iter().map(|(id, (l, r))| (*id, l, r))
    }

    /// Whether `a`'s interval lies entirely to the left of `b`'s.
    /// Panics if either point has no interval.
    pub fn before(&self, a: PointId, b: PointId) -> bool {
        self.intervals[&a].1 < self.intervals[&b].0
    }

    /// The poset induced by the intervals: `x < y` iff `right(x) < left(y)`.
    pub fn induced_poset(&self) -> Poset {
        // Sorting by right endpoint yields a linear extension: x < y forces
        // right(x) < left(y) <= right(y), so every predecessor of a point is
        // inserted before it.
        let mut order: Vec<PointId> = self.points().collect();
        order.sort_by(|a, b| {
            self.intervals[a]
                .1
                .cmp(&self.intervals[b].1)
                .then(a.cmp(b))
        });
        let mut poset = Poset::new();
        for &x in &order {
            let preds = self
                .points()
                .filter(|&y| self.before(y, x))
                .collect::<std::collections::BTreeSet<_>>();
            poset
                .add_point(x, &preds)
                .expect("interval-induced relations are transitively closed");
        }
        poset
    }
}
