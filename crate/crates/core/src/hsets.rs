//! Hereditary and saturated vertex sets, their lattice, graph quotients and
//! the annihilator calculus.
//!
//! A set is *hereditary* when no edge leaves it and *saturated* when it
//! contains every regular vertex all of whose edge targets lie inside. Sets
//! with both properties stand in for the graded ideals of the associated
//! path algebra, so meet/join, quotients and annihilators of ideals all have
//! set-level counterparts computed here.
//!
//! On graphs with infinite emitters the ideal correspondence is not claimed
//! (callers can warn via [`Graph::has_infinite_emitters`]); the set-level
//! operations themselves remain well defined.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::set::VertexSet;
use crate::topology;

/// Default vertex-count cap for lattice enumeration.
pub const DEFAULT_LATTICE_CAP: usize = 16;

/// First edge leaving the set, if any: `Some((source, target))` means
/// `source` is in the set but `target` is not.
pub fn hereditary_violation(g: &Graph, x: &VertexSet) -> Result<Option<(VertexId, VertexId)>> {
    x.check_in(g)?;
    for v in x.iter() {
        for w in g.successors(v) {
            if !x.contains(w) {
                return Ok(Some((v, w)));
            }
        }
    }
    Ok(None)
}

/// First regular vertex outside the set whose whole range lies inside, if
/// any.
pub fn saturation_violation(g: &Graph, x: &VertexSet) -> Result<Option<VertexId>> {
    x.check_in(g)?;
    for v in g.vertices() {
        if !x.contains(v) && g.is_regular(v) && g.range_set(v).is_subset(x) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

pub fn is_hereditary(g: &Graph, x: &VertexSet) -> Result<bool> {
    Ok(hereditary_violation(g, x)?.is_none())
}

pub fn is_saturated(g: &Graph, x: &VertexSet) -> Result<bool> {
    Ok(saturation_violation(g, x)?.is_none())
}

/// Smallest hereditary superset: the tree of `x`.
pub fn hereditary_closure(g: &Graph, x: &VertexSet) -> Result<VertexSet> {
    g.tree(x)
}

/// A vertex set certified hereditary and saturated for its graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HSet {
    members: VertexSet,
}

impl HSet {
    /// Checks both invariants and wraps the set.
    pub fn certify(g: &Graph, members: VertexSet) -> Result<HSet> {
        if let Some((v, w)) = hereditary_violation(g, &members)? {
            return Err(Error::NotHereditary {
                vertex: g.vertex_name(v).to_string(),
                target: g.vertex_name(w).to_string(),
            });
        }
        if let Some(v) = saturation_violation(g, &members)? {
            return Err(Error::NotSaturated { vertex: g.vertex_name(v).to_string() });
        }
        Ok(HSet { members })
    }

    pub fn empty() -> HSet {
        HSet { members: VertexSet::new() }
    }

    pub fn full(g: &Graph) -> HSet {
        HSet { members: VertexSet::full(g) }
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn into_members(self) -> VertexSet {
        self.members
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(v)
    }

    pub fn names<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.members.names(g)
    }
}

/// Least hereditary and saturated superset of `x`: the tree of `x` followed
/// by the saturation fixpoint, which adds regular vertices whose whole range
/// is already inside. Terminates within one pass per vertex.
pub fn hs_closure(g: &Graph, x: &VertexSet) -> Result<HSet> {
    let mut current = g.tree(x)?;
    loop {
        let mut added = false;
        for v in g.vertices() {
            if !current.contains(v) && g.is_regular(v) && g.range_set(v).is_subset(&current) {
                current.insert(v);
                added = true;
            }
        }
        if !added {
            break;
        }
    }
    debug_assert!(hereditary_violation(g, &current).unwrap().is_none());
    Ok(HSet { members: current })
}

/// The quotient graph: the set's vertices are deleted together with every
/// edge whose target lies in the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub graph: Graph,
    /// For each quotient vertex, the corresponding vertex of the original
    /// graph. Names are kept, so this is the identity on names.
    pub kept: Vec<VertexId>,
}

pub fn quotient(g: &Graph, h: &HSet) -> Result<QuotientResult> {
    // Revalidate: the set may have been certified against another graph.
    let h = HSet::certify(g, h.members.clone())?;
    let mut q = Graph::new();
    let mut kept = Vec::new();
    for v in g.vertices() {
        if !h.contains(v) {
            q.add_vertex(g.vertex_name(v)).expect("names unique in source");
            kept.push(v);
        }
    }
    for e in g.edge_ids() {
        let dst = g.edge_dst(e);
        if !h.contains(dst) {
            // Heredity puts the source outside `h` as well.
            q.add_edge(
                g.edge_name(e),
                g.vertex_name(g.edge_src(e)),
                g.vertex_name(dst),
            )
            .expect("endpoints kept");
        }
    }
    for &(src, dst) in g.inf_edges() {
        if !h.contains(dst) {
            q.add_inf_edge(g.vertex_name(src), g.vertex_name(dst)).expect("endpoints kept");
        }
    }
    Ok(QuotientResult { graph: q, kept })
}

/// All hereditary and saturated subsets in canonical order (size, then
/// lexicographic on names). Errors if the graph exceeds `cap` vertices.
pub fn lattice(g: &Graph, cap: usize) -> Result<Vec<HSet>> {
    let n = g.vertex_count();
    if n > cap || n > 64 {
        return Err(Error::CapExceeded { vertices: n, cap: cap.min(64) });
    }
    // Bitmask sweep over the power set.
    let succ_masks: Vec<u64> = g
        .vertices()
        .map(|v| g.successors(v).fold(0u64, |m, w| m | (1u64 << w.0)))
        .collect();
    let regular: Vec<bool> = g.vertices().map(|v| g.is_regular(v)).collect();
    let range_masks: Vec<u64> = g
        .vertices()
        .map(|v| g.range_set(v).to_mask())
        .collect();

    let mut found = Vec::new();
    for mask in 0..(1u64 << n) {
        let hereditary = (0..n)
            .all(|v| mask & (1 << v) == 0 || succ_masks[v] & !mask == 0);
        if !hereditary {
            continue;
        }
        let saturated = (0..n).all(|v| {
            mask & (1 << v) != 0 || !regular[v] || range_masks[v] & !mask != 0
        });
        if saturated {
            found.push(VertexSet::from_mask(mask));
        }
    }
    topology::sort_canonical(g, &mut found);
    Ok(found.into_iter().map(|members| HSet { members }).collect())
}

/// Intersection; hereditary and saturated sets are closed under it.
pub fn meet(g: &Graph, a: &HSet, b: &HSet) -> Result<HSet> {
    let members = a.members.intersection(&b.members);
    HSet::certify(g, members)
}

/// Hereditary and saturated closure of the union.
pub fn join(g: &Graph, a: &HSet, b: &HSet) -> Result<HSet> {
    hs_closure(g, &a.members.union(&b.members))
}

/// The exterior of `h`: vertices that do not connect to it. For hereditary
/// and saturated input the result is again hereditary and saturated — this
/// is the set counterpart of the annihilator of the ideal of `h`. A failed
/// certification would be an implementation bug, hence fatal.
pub fn annihilator(g: &Graph, h: &HSet) -> Result<HSet> {
    let ext = topology::exterior(g, &h.members)?;
    Ok(HSet::certify(g, ext).expect("exterior of an h.s. set is h.s."))
}

/// The annihilator applied twice; always contains `h`.
pub fn double_annihilator(g: &Graph, h: &HSet) -> Result<HSet> {
    let first = annihilator(g, h)?;
    annihilator(g, &first)
}

/// Set criterion for the ideal of `h` being a regular ideal: the double
/// annihilator stays inside `h`.
pub fn is_regular_ideal_set(g: &Graph, h: &HSet) -> Result<bool> {
    Ok(double_annihilator(g, h)?.members.is_subset(&h.members))
}
