//! Shared fixtures, brute-force oracles and graph corpora for the
//! integration and acceptance suites.
//!
//! The oracles deliberately avoid the library's algorithms: reachability is
//! a Floyd-Warshall matrix instead of searches, the point-functor oracles
//! work from the definitions via explicit cycle enumeration, and closures
//! are computed by intersecting brute-force enumerated supersets.

#![allow(dead_code)]

use lpa_core::graph::{EdgeId, Graph, VertexId};
use lpa_core::set::VertexSet;
use rand::rngs::StdRng;
use rand::Rng;

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

/// Loop at `v` plus edges to the two sinks `u` and `w`.
pub fn fig1() -> Graph {
    Graph::parse("vertex v\nvertex u\nvertex w\nedge e v v\nedge f v u\nedge g v w").unwrap()
}

/// One infinite bundle into a sink.
pub fn fiber() -> Graph {
    Graph::parse("vertex u\nvertex v\ninfedge u v").unwrap()
}

/// Path of three vertices ending in a loop.
pub fn shift_e() -> Graph {
    Graph::parse("vertex u1\nvertex u2\nvertex u3\nedge f1 u1 u2\nedge f2 u2 u3\nedge f3 u3 u3")
        .unwrap()
}

/// Companion of [`shift_e`]: a path into a two-cycle.
pub fn shift_f() -> Graph {
    Graph::parse("vertex v1\nvertex v2\nvertex v3\nedge g1 v1 v2\nedge g2 v2 v3\nedge g3 v3 v2")
        .unwrap()
}

/// Four looped vertices chained towards `v1`.
pub fn chain4() -> Graph {
    Graph::parse(
        "vertex v1\nvertex v2\nvertex v3\nvertex v4\n\
         edge l1 v1 v1\nedge l2 v2 v2\nedge l3 v3 v3\nedge l4 v4 v4\n\
         edge c2 v2 v1\nedge c3 v3 v2\nedge c4 v4 v3",
    )
    .unwrap()
}

/// Two looped vertices chained into a sink.
pub fn mix() -> Graph {
    Graph::parse("vertex u\nvertex v\nvertex w\nedge a u u\nedge b u v\nedge c v v\nedge d v w")
        .unwrap()
}

/// Two loops at a single vertex.
pub fn rose2() -> Graph {
    Graph::parse("vertex v\nedge l1 v v\nedge l2 v v").unwrap()
}

// ---------------------------------------------------------------------------
// Corpora
// ---------------------------------------------------------------------------

/// A random multigraph with up to `max_v` vertices and `max_e` edges; with
/// probability `emitter_prob` it also carries one or two bundles.
pub fn random_graph(rng: &mut StdRng, max_v: usize, max_e: usize, emitter_prob: f64) -> Graph {
    let n = rng.gen_range(0..=max_v);
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}")).unwrap();
    }
    if n == 0 {
        return g;
    }
    let m = rng.gen_range(0..=max_e);
    for j in 0..m {
        let s = rng.gen_range(0..n);
        let d = rng.gen_range(0..n);
        g.add_edge(&format!("e{j}"), &format!("v{s}"), &format!("v{d}")).unwrap();
    }
    if emitter_prob > 0.0 && rng.gen_bool(emitter_prob) {
        for _ in 0..rng.gen_range(1..=2) {
            let s = rng.gen_range(0..n);
            let d = rng.gen_range(0..n);
            g.add_inf_edge(&format!("v{s}"), &format!("v{d}")).unwrap();
        }
    }
    g
}

/// A random subset of the graph's vertices.
pub fn random_subset(rng: &mut StdRng, g: &Graph) -> VertexSet {
    g.vertices().filter(|_| rng.gen_bool(0.5)).collect()
}

/// Every labeled multigraph with at most `max_v` vertices and at most
/// `max_e` edges (edge multisets over ordered vertex pairs), streamed to the
/// callback.
pub fn for_each_multigraph(max_v: usize, max_e: usize, mut f: impl FnMut(&Graph)) {
    for n in 0..=max_v {
        let slots: Vec<(usize, usize)> =
            (0..n).flat_map(|s| (0..n).map(move |d| (s, d))).collect();
        let mut chosen: Vec<usize> = Vec::new();
        build_multisets(n, &slots, &mut chosen, 0, max_e, &mut f);
    }
}

fn build_multisets(
    n: usize,
    slots: &[(usize, usize)],
    chosen: &mut Vec<usize>,
    min_slot: usize,
    remaining: usize,
    f: &mut impl FnMut(&Graph),
) {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}")).unwrap();
    }
    for (j, &slot) in chosen.iter().enumerate() {
        let (s, d) = slots[slot];
        g.add_edge(&format!("e{j}"), &format!("v{s}"), &format!("v{d}")).unwrap();
    }
    f(&g);
    if remaining == 0 {
        return;
    }
    for slot in min_slot..slots.len() {
        chosen.push(slot);
        build_multisets(n, slots, chosen, slot, remaining - 1, f);
        chosen.pop();
    }
}

/// Builds a random graph together with a valid shift specification: the
/// out-edges of `u` are rebuilt as copies of a chosen subset of the
/// out-edges of `v`, so the range-matching map exists by construction.
pub fn random_shift_case(rng: &mut StdRng) -> (Graph, lpa_core::ShiftSpec) {
    use rand::seq::SliceRandom;
    loop {
        let g = random_graph(rng, 8, 12, 0.15);
        let n = g.vertex_count();
        if n < 2 {
            continue;
        }
        let u = VertexId(rng.gen_range(0..n));
        let v = VertexId(rng.gen_range(0..n));
        if u == v || g.is_infinite_emitter(u) {
            continue;
        }

        let mut vout: Vec<EdgeId> = g.out_edges(v).to_vec();
        vout.shuffle(rng);
        let k = rng.gen_range(0..=vout.len());
        let image = &vout[..k];

        let mut ng = Graph::new();
        for x in g.vertices() {
            ng.add_vertex(g.vertex_name(x)).unwrap();
        }
        for e in g.edge_ids() {
            if g.edge_src(e) != u {
                ng.add_edge(
                    g.edge_name(e),
                    g.vertex_name(g.edge_src(e)),
                    g.vertex_name(g.edge_dst(e)),
                )
                .unwrap();
            }
        }
        let mut pairs = Vec::new();
        for (i, &img) in image.iter().enumerate() {
            let name = format!("t{i}");
            ng.add_edge(&name, g.vertex_name(u), g.vertex_name(g.edge_dst(img)))
                .unwrap();
            pairs.push((name, g.edge_name(img).to_string()));
        }
        for &(s, d) in g.inf_edges() {
            if s != u {
                ng.add_inf_edge(g.vertex_name(s), g.vertex_name(d)).unwrap();
            }
        }
        let spec = lpa_core::ShiftSpec::from_names(&ng, g.vertex_name(u), g.vertex_name(v), &pairs)
            .unwrap();
        return (ng, spec);
    }
}

/// Renames every vertex through `f`, preserving structure and order.
pub fn rename_vertices(g: &Graph, f: impl Fn(&str) -> String) -> Graph {
    let mut out = Graph::new();
    for v in g.vertices() {
        out.add_vertex(&f(g.vertex_name(v))).unwrap();
    }
    for e in g.edge_ids() {
        out.add_edge(
            g.edge_name(e),
            &f(g.vertex_name(g.edge_src(e))),
            &f(g.vertex_name(g.edge_dst(e))),
        )
        .unwrap();
    }
    for &(s, d) in g.inf_edges() {
        out.add_inf_edge(&f(g.vertex_name(s)), &f(g.vertex_name(d))).unwrap();
    }
    out
}

/// Carries a set across [`rename_vertices`].
pub fn rename_set(g: &Graph, renamed: &Graph, f: impl Fn(&str) -> String, s: &VertexSet) -> VertexSet {
    s.iter()
        .map(|v| renamed.vertex(&f(g.vertex_name(v))).expect("renamed vertex exists"))
        .collect()
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Reflexive-transitive reachability by Floyd-Warshall; bundles count as
/// edges.
#[allow(clippy::needless_range_loop)]
pub fn reach_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        m[i][i] = true;
    }
    for e in g.edge_ids() {
        m[g.edge_src(e).0][g.edge_dst(e).0] = true;
    }
    for &(s, d) in g.inf_edges() {
        m[s.0][d.0] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    m
}

/// Definitional closure: vertices with a path into the set.
pub fn closure_oracle(g: &Graph, a: &VertexSet) -> VertexSet {
    let m = reach_matrix(g);
    g.vertices()
        .filter(|v| a.iter().any(|t| m[v.0][t.0]))
        .collect()
}

/// All closed sets by filtering the whole power set.
pub fn closed_sets_oracle(g: &Graph) -> std::collections::BTreeSet<VertexSet> {
    let n = g.vertex_count();
    assert!(n <= 16, "oracle is exponential");
    let mut out = std::collections::BTreeSet::new();
    for mask in 0..(1u64 << n) {
        let a = VertexSet::from_mask(mask);
        if closure_oracle(g, &a) == a {
            out.insert(a);
        }
    }
    out
}

pub fn hereditary_oracle(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|v| g.successors(v).all(|w| s.contains(w)))
}

pub fn saturated_oracle(g: &Graph, s: &VertexSet) -> bool {
    g.vertices().all(|v| {
        !g.is_regular(v) || s.contains(v) || {
            let range = g.range_set(v);
            !range.is_subset(s)
        }
    })
}

/// Least hereditary-and-saturated superset by intersecting every enumerated
/// one.
pub fn hs_closure_oracle(g: &Graph, x: &VertexSet) -> VertexSet {
    let n = g.vertex_count();
    assert!(n <= 16, "oracle is exponential");
    let mut acc = VertexSet::full(g);
    for mask in 0..(1u64 << n) {
        let s = VertexSet::from_mask(mask);
        if x.is_subset(&s) && hereditary_oracle(g, &s) && saturated_oracle(g, &s) {
            acc = acc.intersection(&s);
        }
    }
    acc
}

/// An arc of a cycle: a finite edge or one copy of a bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arc {
    Edge(EdgeId),
    Bundle(usize, usize),
}

fn arcs_from(g: &Graph, v: VertexId) -> Vec<(Arc, VertexId)> {
    let mut out: Vec<(Arc, VertexId)> = g
        .out_edges(v)
        .iter()
        .map(|&e| (Arc::Edge(e), g.edge_dst(e)))
        .collect();
    for &t in g.inf_targets(v) {
        out.push((Arc::Bundle(v.0, t.0), t));
    }
    out
}

/// Every vertex-simple cycle as a list of (vertex, chosen arc); parallel
/// edges yield distinct cycles. Each cycle is rooted at its smallest vertex.
pub fn simple_cycles(g: &Graph) -> Vec<Vec<(VertexId, Arc)>> {
    fn dfs(
        g: &Graph,
        start: VertexId,
        v: VertexId,
        path: &mut Vec<(VertexId, Arc)>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<Vec<(VertexId, Arc)>>,
    ) {
        on_path[v.0] = true;
        for (arc, w) in arcs_from(g, v) {
            if w == start {
                let mut cycle = path.clone();
                cycle.push((v, arc));
                out.push(cycle);
            } else if w.0 > start.0 && !on_path[w.0] {
                path.push((v, arc));
                dfs(g, start, w, path, on_path, out);
                path.pop();
            }
        }
        on_path[v.0] = false;
    }

    let mut out = Vec::new();
    for start in g.vertices() {
        let mut path = Vec::new();
        let mut on_path = vec![false; g.vertex_count()];
        dfs(g, start, start, &mut path, &mut on_path, &mut out);
    }
    out
}

fn cycle_vertices(cycle: &[(VertexId, Arc)]) -> VertexSet {
    cycle.iter().map(|&(v, _)| v).collect()
}

/// Whether the cycle has an exit: an arc from a cycle vertex that is not one
/// of the cycle's own arcs. Any bundle touching a cycle vertex counts (its
/// parallel copies always provide exits).
fn cycle_has_exit(g: &Graph, cycle: &[(VertexId, Arc)]) -> bool {
    let verts = cycle_vertices(cycle);
    for v in verts.iter() {
        if g.is_infinite_emitter(v) {
            return true;
        }
        for &e in g.out_edges(v) {
            if !cycle.iter().any(|&(cv, arc)| cv == v && arc == Arc::Edge(e)) {
                return true;
            }
        }
    }
    false
}

/// Line points straight from the definition and the reachability matrix.
pub fn line_points_oracle(g: &Graph) -> VertexSet {
    let m = reach_matrix(g);
    let on_cycle: Vec<bool> = g
        .vertices()
        .map(|v| g.successors(v).any(|w| m[w.0][v.0]))
        .collect();
    g.vertices()
        .filter(|&v| {
            g.vertices()
                .filter(|w| m[v.0][w.0]) // w in the tree of v
                .all(|w| !on_cycle[w.0] && !g.out_degree(w).at_least(2))
        })
        .collect()
}

/// Vertices on exit-free cycles, from cycle enumeration.
pub fn no_exit_cycle_points_oracle(g: &Graph) -> VertexSet {
    let mut out = VertexSet::new();
    for cycle in simple_cycles(g) {
        if !cycle_has_exit(g, &cycle) {
            out = out.union(&cycle_vertices(&cycle));
        }
    }
    out
}

/// Vertices on extreme cycles, straight from the path-extension definition:
/// the cycle has an exit and every vertex reachable from it reaches back.
pub fn extreme_cycle_points_oracle(g: &Graph) -> VertexSet {
    let m = reach_matrix(g);
    let mut out = VertexSet::new();
    for cycle in simple_cycles(g) {
        if !cycle_has_exit(g, &cycle) {
            continue;
        }
        let verts = cycle_vertices(&cycle);
        let returns = g.vertices().all(|w| {
            let reachable_from_cycle = verts.iter().any(|c| m[c.0][w.0]);
            !reachable_from_cycle || verts.iter().any(|c| m[w.0][c.0])
        });
        if returns {
            out = out.union(&verts);
        }
    }
    out
}
