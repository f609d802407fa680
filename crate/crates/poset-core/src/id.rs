use std::fmt;

/// Identifier of a poset point.
///
/// Ids are signed so that strategies can reserve negative ids for internal
/// sentinel points; the text formats in this workspace only ever accept and
/// emit non-negative ids.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PointId(pub i64);

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<i64> for PointId {
    fn from(raw: i64) -> Self {
        PointId(raw)
    }
}
