//! Identifiers and compact bit sets of edges and vertices.
//!
//! Edge sets are keyed directly by [`EdgeId`] value, so a set stays valid
//! when other edges are added to or removed from a graph.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Exclusive upper bound on edge identifiers.
pub const EDGE_ID_LIMIT: u32 = 128;
/// Exclusive upper bound on vertex identifiers.
pub const VERTEX_ID_LIMIT: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A set of edges, stored as a 128-bit mask indexed by edge id.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeSet(pub u128);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn singleton(e: EdgeId) -> Self {
        EdgeSet(1u128 << e.0)
    }

    pub fn contains(self, e: EdgeId) -> bool {
        e.0 < EDGE_ID_LIMIT && self.0 >> e.0 & 1 == 1
    }

    pub fn insert(&mut self, e: EdgeId) {
        self.0 |= 1u128 << e.0;
    }

    pub fn remove(&mut self, e: EdgeId) {
        self.0 &= !(1u128 << e.0);
    }

    pub fn with(self, e: EdgeId) -> Self {
        EdgeSet(self.0 | 1u128 << e.0)
    }

    pub fn without(self, e: EdgeId) -> Self {
        EdgeSet(self.0 & !(1u128 << e.0))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        EdgeSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        EdgeSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        EdgeSet(self.0 & !o.0)
    }

    pub fn symmetric_difference(self, o: Self) -> Self {
        EdgeSet(self.0 ^ o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: Self) -> bool {
        self.0 & o.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<EdgeId> {
        (self.0 != 0).then(|| EdgeId(self.0.trailing_zeros()))
    }

    /// Largest member.
    pub fn last(self) -> Option<EdgeId> {
        (self.0 != 0).then(|| EdgeId(127 - self.0.leading_zeros()))
    }

    pub fn iter(self) -> EdgeIter {
        EdgeIter(self.0)
    }

    pub fn ids(self) -> Vec<EdgeId> {
        self.iter().collect()
    }

    /// Order by size, then by the sorted id sequence.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.ids().cmp(&other.ids()))
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical_cmp(other)
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        let mut s = EdgeSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl<'a> FromIterator<&'a EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = &'a EdgeId>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for EdgeSet {
    type Item = EdgeId;
    type IntoIter = EdgeIter;
    fn into_iter(self) -> EdgeIter {
        self.iter()
    }
}

pub struct EdgeIter(u128);

impl Iterator for EdgeIter {
    type Item = EdgeId;
    fn next(&mut self) -> Option<EdgeId> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(EdgeId(i))
    }
}

/// A set of vertices, stored as a 64-bit mask indexed by vertex id.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(1u64 << v.0)
    }

    pub fn contains(self, v: VertexId) -> bool {
        v.0 < VERTEX_ID_LIMIT && self.0 >> v.0 & 1 == 1
    }

    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1u64 << v.0;
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0 &= !(1u64 << v.0);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros();
            m &= m - 1;
            Some(VertexId(i))
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Build an edge set from raw ids; handy in tests and fixtures.
pub fn edges(ids: &[u32]) -> EdgeSet {
    ids.iter().map(|&i| EdgeId(i)).collect()
}
