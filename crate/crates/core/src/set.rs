//! Subsets of a graph's vertex set — the universal currency of every
//! operation in this crate.
//!
//! A `VertexSet` holds vertex indices of one specific graph. The pairing is
//! by convention: operations that receive a set alongside a graph verify the
//! indices are in range and report `VertexOutOfRange` otherwise. Display and
//! JSON output list member names sorted lexicographically.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet {
    members: BTreeSet<VertexId>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet::default()
    }

    pub fn singleton(v: VertexId) -> Self {
        let mut members = BTreeSet::new();
        members.insert(v);
        VertexSet { members }
    }

    /// The whole vertex set of `g`.
    pub fn full(g: &Graph) -> Self {
        g.vertices().collect()
    }

    /// Resolves vertex names against `g`.
    pub fn from_names<'a, I>(g: &Graph, names: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut members = BTreeSet::new();
        for name in names {
            let v = g.vertex(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
            members.insert(v);
        }
        Ok(VertexSet { members })
    }

    /// Parses a comma-separated list of vertex names; the empty string is the
    /// empty set.
    pub fn parse(g: &Graph, text: &str) -> Result<Self> {
        let names = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty());
        VertexSet::from_names(g, names)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.members.insert(v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().copied()
    }

    pub fn union(&self, other: &Self) -> Self {
        VertexSet { members: self.members.union(&other.members).copied().collect() }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        VertexSet { members: self.members.intersection(&other.members).copied().collect() }
    }

    pub fn difference(&self, other: &Self) -> Self {
        VertexSet { members: self.members.difference(&other.members).copied().collect() }
    }

    pub fn complement(&self, g: &Graph) -> Self {
        g.vertices().filter(|v| !self.contains(*v)).collect()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `|self \ other| <= 1`: contained in `other` except at most one member.
    pub fn is_subset_except_one(&self, other: &Self) -> bool {
        self.members.iter().filter(|v| !other.contains(**v)).count() <= 1
    }

    /// Member names sorted lexicographically — the canonical display form.
    pub fn names<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        let mut names: Vec<&str> = self.members.iter().map(|&v| g.vertex_name(v)).collect();
        names.sort_unstable();
        names
    }

    /// Verifies every member is a vertex of `g`.
    pub fn check_in(&self, g: &Graph) -> Result<()> {
        match self.members.iter().next_back() {
            Some(&max) if max.0 >= g.vertex_count() => Err(Error::VertexOutOfRange {
                index: max.0,
                count: g.vertex_count(),
            }),
            _ => Ok(()),
        }
    }

    /// Bitmask form, for enumeration over graphs with at most 64 vertices.
    pub fn to_mask(&self) -> u64 {
        self.members.iter().fold(0u64, |m, v| m | (1u64 << v.0))
    }

    /// Inverse of [`VertexSet::to_mask`].
    pub fn from_mask(mask: u64) -> Self {
        (0..64)
            .filter(|i| mask & (1u64 << i) != 0)
            .map(VertexId)
            .collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<T: IntoIterator<Item = VertexId>>(iter: T) -> Self {
        VertexSet { members: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexId;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, VertexId>>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}
