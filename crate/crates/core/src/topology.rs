//! The connection topology on a graph's vertex set.
//!
//! The closure of a set `A` is the set of vertices that connect to `A` by a
//! possibly trivial path. This map satisfies the Kuratowski closure axioms,
//! so it induces a topology whose closed sets are exactly the fixed points:
//! sets already containing every vertex that reaches them.
//!
//! Since closure commutes with union, every closed set is a union of
//! single-vertex closures; the enumerator below exploits that instead of
//! filtering the whole power set.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::hsets::hereditary_violation;
use crate::set::VertexSet;

/// Default vertex-count cap for closed-set enumeration.
pub const DEFAULT_CLOSED_SETS_CAP: usize = 20;

/// Closure of `a`: every vertex that reaches some member of `a`.
pub fn closure(g: &Graph, a: &VertexSet) -> Result<VertexSet> {
    a.check_in(g)?;
    // Backward reachability from `a`.
    let mut visited = vec![false; g.vertex_count()];
    let mut stack: Vec<VertexId> = a.iter().collect();
    for v in a.iter() {
        visited[v.0] = true;
    }
    while let Some(v) = stack.pop() {
        for u in g.predecessors(v) {
            if !visited[u.0] {
                visited[u.0] = true;
                stack.push(u);
            }
        }
    }
    Ok(visited
        .iter()
        .enumerate()
        .filter_map(|(i, &seen)| seen.then_some(VertexId(i)))
        .collect())
}

pub fn is_closed(g: &Graph, a: &VertexSet) -> Result<bool> {
    Ok(closure(g, a)? == *a)
}

pub fn is_open(g: &Graph, a: &VertexSet) -> Result<bool> {
    a.check_in(g)?;
    is_closed(g, &a.complement(g))
}

pub fn is_clopen(g: &Graph, a: &VertexSet) -> Result<bool> {
    Ok(is_closed(g, a)? && is_open(g, a)?)
}

/// Complement of the closure: the vertices that do not connect to `a`.
pub fn exterior(g: &Graph, a: &VertexSet) -> Result<VertexSet> {
    Ok(closure(g, a)?.complement(g))
}

/// Complement of the closure of the complement.
pub fn interior(g: &Graph, a: &VertexSet) -> Result<VertexSet> {
    a.check_in(g)?;
    Ok(closure(g, &a.complement(g))?.complement(g))
}

/// Closure of `a` intersected with the closure of its complement. Interior,
/// boundary and exterior partition the vertex set.
pub fn boundary(g: &Graph, a: &VertexSet) -> Result<VertexSet> {
    a.check_in(g)?;
    Ok(closure(g, a)?.intersection(&closure(g, &a.complement(g))?))
}

/// Streams every closed set, the empty set first, in a deterministic
/// implementation order (not the canonical one — see [`closed_sets`]).
///
/// Closed sets are exactly the unions of single-vertex closures, so the
/// stream walks the union lattice breadth-first and deduplicates. Errors if
/// the graph exceeds `cap` vertices.
pub fn closed_sets_iter(g: &Graph, cap: usize) -> Result<ClosedSetsIter> {
    let n = g.vertex_count();
    if n > cap || n > 64 {
        return Err(Error::CapExceeded { vertices: n, cap: cap.min(64) });
    }
    let mut generators: Vec<u64> = Vec::new();
    for v in g.vertices() {
        let c = closure(g, &VertexSet::singleton(v))?.to_mask();
        if !generators.contains(&c) {
            generators.push(c);
        }
    }
    let mut seen = HashSet::new();
    seen.insert(0u64);
    let mut queue = VecDeque::new();
    queue.push_back(0u64);
    Ok(ClosedSetsIter { generators, seen, queue })
}

pub struct ClosedSetsIter {
    generators: Vec<u64>,
    seen: HashSet<u64>,
    queue: VecDeque<u64>,
}

impl Iterator for ClosedSetsIter {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let mask = self.queue.pop_front()?;
        for &gen in &self.generators {
            let next = mask | gen;
            if self.seen.insert(next) {
                self.queue.push_back(next);
            }
        }
        Some(VertexSet::from_mask(mask))
    }
}

/// All closed sets, ordered by size and then lexicographically by member
/// names. Errors if the graph exceeds `cap` vertices.
pub fn closed_sets(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    let mut sets: Vec<VertexSet> = closed_sets_iter(g, cap)?.collect();
    sort_canonical(g, &mut sets);
    Ok(sets)
}

/// Size-then-lexicographic order on the sorted member names.
pub fn sort_canonical(g: &Graph, sets: &mut [VertexSet]) {
    sets.sort_by_cached_key(|s| (s.len(), s.names(g).into_iter().map(String::from).collect::<Vec<_>>()));
}

/// Whether the only clopen sets are empty and everything. A clopen set is
/// closed under edges in both directions, so this amounts to the
/// bidirectional closure of one vertex covering the graph. The empty graph
/// is reported not connected.
pub fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return false;
    }
    let mut visited = vec![false; n];
    let mut stack = vec![VertexId(0)];
    visited[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for w in g.successors(v).chain(g.predecessors(v)) {
            if !visited[w.0] {
                visited[w.0] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Whether a hereditary set is dense, i.e. its closure is the whole vertex
/// set. Errors if `h` is not hereditary.
pub fn is_dense(g: &Graph, h: &VertexSet) -> Result<bool> {
    if let Some((v, w)) = hereditary_violation(g, h)? {
        return Err(Error::NotHereditary {
            vertex: g.vertex_name(v).to_string(),
            target: g.vertex_name(w).to_string(),
        });
    }
    Ok(closure(g, h)?.len() == g.vertex_count())
}

/// A total map from the vertices of one graph to the vertices of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    images: Vec<VertexId>,
}

impl VertexMap {
    /// Builds the map from `(source, destination)` name pairs; every vertex
    /// of `src` must get an image.
    pub fn from_pairs(src: &Graph, dst: &Graph, pairs: &[(String, String)]) -> Result<VertexMap> {
        let mut images = vec![None; src.vertex_count()];
        for (a, b) in pairs {
            let va = src.vertex(a).ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let vb = dst.vertex(b).ok_or_else(|| Error::UnknownVertex(b.clone()))?;
            images[va.0] = Some(vb);
        }
        let mut complete = Vec::with_capacity(images.len());
        for (i, img) in images.into_iter().enumerate() {
            match img {
                Some(v) => complete.push(v),
                None => {
                    return Err(Error::MapNotTotal {
                        vertex: src.vertex_name(VertexId(i)).to_string(),
                    })
                }
            }
        }
        Ok(VertexMap { images: complete })
    }

    /// The map sending every vertex of `src` to the vertex of `dst` with the
    /// same name.
    pub fn by_name(src: &Graph, dst: &Graph) -> Result<VertexMap> {
        let mut images = Vec::with_capacity(src.vertex_count());
        for v in src.vertices() {
            let name = src.vertex_name(v);
            let img = dst.vertex(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
            images.push(img);
        }
        Ok(VertexMap { images })
    }

    pub fn image(&self, v: VertexId) -> VertexId {
        self.images[v.0]
    }

    /// Preimage of a destination set.
    pub fn preimage(&self, target: &VertexSet) -> VertexSet {
        self.images
            .iter()
            .enumerate()
            .filter_map(|(i, img)| target.contains(*img).then_some(VertexId(i)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityReport {
    pub continuous: bool,
    /// When discontinuous: the first closed set of the destination, in
    /// canonical order, whose preimage is not closed in the source.
    pub witness: Option<VertexSet>,
}

/// Checks whether `map` is continuous for the connection topologies: the
/// preimage of every closed set of `dst` must be closed in `src`.
///
/// Continuity is equivalent to the map preserving reachability pairwise, so
/// a quick pairwise sweep settles the passing case. On failure the closed
/// sets of `dst` are enumerated (hence the cap) to produce the canonical
/// witness.
pub fn continuity_check(
    src: &Graph,
    dst: &Graph,
    map: &VertexMap,
    cap: usize,
) -> Result<ContinuityReport> {
    if dst.vertex_count() > cap {
        return Err(Error::CapExceeded { vertices: dst.vertex_count(), cap });
    }
    let pairwise_ok = (0..src.vertex_count()).all(|u| {
        let u = VertexId(u);
        let forward = src.tree(&VertexSet::singleton(u)).expect("vertex in range");
        let image_forward = dst
            .tree(&VertexSet::singleton(map.image(u)))
            .expect("vertex in range");
        let ok = forward.iter().all(|v| image_forward.contains(map.image(v)));
        ok
    });
    if pairwise_ok {
        return Ok(ContinuityReport { continuous: true, witness: None });
    }
    for s in closed_sets(dst, cap)? {
        if !is_closed(src, &map.preimage(&s))? {
            return Ok(ContinuityReport { continuous: false, witness: Some(s) });
        }
    }
    unreachable!("pairwise reachability failure implies a closed-set witness");
}
