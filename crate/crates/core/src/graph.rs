//! Finite directed multigraphs with named vertices and edges.
//!
//! Vertices and edges keep their declaration order, so serialization and
//! every derived listing are deterministic. A vertex may additionally emit an
//! *infinite bundle* towards a target: the pair is recorded as a flag rather
//! than materialized edges, the emitting vertex has infinite out-degree and
//! reachability treats the bundle as at least one edge.
//!
//! Graphs are immutable once built (the parser and builder produce them, no
//! mutation afterwards), so values can be shared freely across threads.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::set::VertexSet;

/// Index of a vertex in its graph's declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Index of an edge in its graph's declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// An in- or out-degree; `Infinite` when an edge bundle is attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Finite(usize),
    Infinite,
}

impl Degree {
    pub fn at_least(self, n: usize) -> bool {
        match self {
            Degree::Finite(k) => k >= n,
            Degree::Infinite => true,
        }
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::Finite(k) => write!(f, "{k}"),
            Degree::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeRecord {
    name: String,
    src: VertexId,
    dst: VertexId,
}

/// A finite directed multigraph, possibly with infinite edge bundles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    vertex_names: Vec<String>,
    vertex_lookup: HashMap<String, VertexId>,
    edges: Vec<EdgeRecord>,
    edge_lookup: HashMap<String, EdgeId>,
    /// Infinite bundles in declaration order, deduplicated.
    inf_edges: Vec<(VertexId, VertexId)>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    /// Bundle targets per source vertex.
    inf_out: Vec<Vec<VertexId>>,
    /// Bundle sources per target vertex.
    inf_in: Vec<Vec<VertexId>>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Declares a vertex. Errors on a duplicate name.
    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.vertex_lookup.contains_key(name) {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        let id = VertexId(self.vertex_names.len());
        self.vertex_names.push(name.to_string());
        self.vertex_lookup.insert(name.to_string(), id);
        self.out_edges.push(Vec::new());
        self.in_edges.push(Vec::new());
        self.inf_out.push(Vec::new());
        self.inf_in.push(Vec::new());
        Ok(id)
    }

    /// Declares an edge between two already-declared vertices.
    pub fn add_edge(&mut self, name: &str, src: &str, dst: &str) -> Result<EdgeId> {
        if self.edge_lookup.contains_key(name) {
            return Err(Error::DuplicateEdge(name.to_string()));
        }
        let src = self.vertex(src).ok_or_else(|| Error::UnknownVertex(src.to_string()))?;
        let dst = self.vertex(dst).ok_or_else(|| Error::UnknownVertex(dst.to_string()))?;
        let id = EdgeId(self.edges.len());
        self.edges.push(EdgeRecord { name: name.to_string(), src, dst });
        self.edge_lookup.insert(name.to_string(), id);
        self.out_edges[src.0].push(id);
        self.in_edges[dst.0].push(id);
        Ok(id)
    }

    /// Declares an infinite bundle. Duplicate pairs collapse silently.
    pub fn add_inf_edge(&mut self, src: &str, dst: &str) -> Result<()> {
        let src = self.vertex(src).ok_or_else(|| Error::UnknownVertex(src.to_string()))?;
        let dst = self.vertex(dst).ok_or_else(|| Error::UnknownVertex(dst.to_string()))?;
        if !self.inf_edges.contains(&(src, dst)) {
            self.inf_edges.push((src, dst));
            self.inf_out[src.0].push(dst);
            self.inf_in[dst.0].push(src);
        }
        Ok(())
    }

    /// Parses the graph text format: one directive per line, `#` starts a
    /// comment. Directives are `vertex <name>`, `edge <name> <src> <dst>` and
    /// `infedge <src> <dst>`; vertices must be declared before use.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g = Graph::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let mut tokens = stripped.split_whitespace();
            let Some(directive) = tokens.next() else { continue };
            let rest: Vec<&str> = tokens.collect();
            let at_line = |e: Error| match e {
                Error::UnknownVertex(v) => Error::Parse {
                    line,
                    msg: format!("undeclared vertex `{v}`"),
                },
                other => Error::Parse { line, msg: other.to_string() },
            };
            match directive {
                "vertex" => {
                    let [name] = rest[..] else {
                        return Err(Error::Parse {
                            line,
                            msg: "expected `vertex <name>`".into(),
                        });
                    };
                    g.add_vertex(name).map_err(at_line)?;
                }
                "edge" => {
                    let [name, src, dst] = rest[..] else {
                        return Err(Error::Parse {
                            line,
                            msg: "expected `edge <name> <src> <dst>`".into(),
                        });
                    };
                    g.add_edge(name, src, dst).map_err(at_line)?;
                }
                "infedge" => {
                    let [src, dst] = rest[..] else {
                        return Err(Error::Parse {
                            line,
                            msg: "expected `infedge <src> <dst>`".into(),
                        });
                    };
                    g.add_inf_edge(src, dst).map_err(at_line)?;
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unknown directive `{other}`"),
                    });
                }
            }
        }
        Ok(g)
    }

    /// Serializes back to the text format, preserving declaration order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in &self.vertex_names {
            let _ = writeln!(out, "vertex {name}");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "edge {} {} {}",
                e.name,
                self.vertex_names[e.src.0],
                self.vertex_names[e.dst.0]
            );
        }
        for &(src, dst) in &self.inf_edges {
            let _ = writeln!(
                out,
                "infedge {} {}",
                self.vertex_names[src.0],
                self.vertex_names[dst.0]
            );
        }
        out
    }

    /// Graphviz export. Infinite bundles come out as one edge labeled `∞`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for name in &self.vertex_names {
            let _ = writeln!(out, "  \"{name}\";");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.vertex_names[e.src.0],
                self.vertex_names[e.dst.0],
                e.name
            );
        }
        for &(src, dst) in &self.inf_edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"∞\"];",
                self.vertex_names[src.0],
                self.vertex_names[dst.0]
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_lookup.get(name).copied()
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn edge_src(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].src
    }

    pub fn edge_dst(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].dst
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    /// Infinite bundles in declaration order.
    pub fn inf_edges(&self) -> &[(VertexId, VertexId)] {
        &self.inf_edges
    }

    /// Bundle targets emitted by `v`.
    pub fn inf_targets(&self, v: VertexId) -> &[VertexId] {
        &self.inf_out[v.0]
    }

    pub fn is_infinite_emitter(&self, v: VertexId) -> bool {
        !self.inf_out[v.0].is_empty()
    }

    pub fn has_infinite_emitters(&self) -> bool {
        !self.inf_edges.is_empty()
    }

    pub fn out_degree(&self, v: VertexId) -> Degree {
        if self.is_infinite_emitter(v) {
            Degree::Infinite
        } else {
            Degree::Finite(self.out_edges[v.0].len())
        }
    }

    pub fn in_degree(&self, v: VertexId) -> Degree {
        if self.inf_in[v.0].is_empty() {
            Degree::Finite(self.in_edges[v.0].len())
        } else {
            Degree::Infinite
        }
    }

    /// Neither a sink nor an infinite emitter.
    pub fn is_regular(&self, v: VertexId) -> bool {
        matches!(self.out_degree(v), Degree::Finite(k) if k >= 1)
    }

    /// Edge targets of `v`, bundle targets included; may repeat.
    pub fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_edges[v.0]
            .iter()
            .map(|&e| self.edges[e.0].dst)
            .chain(self.inf_out[v.0].iter().copied())
    }

    /// Edge sources leading into `v`, bundle sources included; may repeat.
    pub fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.in_edges[v.0]
            .iter()
            .map(|&e| self.edges[e.0].src)
            .chain(self.inf_in[v.0].iter().copied())
    }

    /// Distinct finite-edge targets of `v`; the range set used by saturation.
    pub fn range_set(&self, v: VertexId) -> VertexSet {
        self.out_edges[v.0].iter().map(|&e| self.edges[e.0].dst).collect()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { index: v.0, count: self.vertex_count() })
        }
    }

    /// The tree of `seed`: every vertex reachable from it by a possibly
    /// trivial path. Contains the seed and is hereditary.
    pub fn tree(&self, seed: &VertexSet) -> Result<VertexSet> {
        seed.check_in(self)?;
        let mut visited = vec![false; self.vertex_count()];
        let mut stack: Vec<VertexId> = seed.iter().collect();
        for v in seed.iter() {
            visited[v.0] = true;
        }
        while let Some(v) = stack.pop() {
            for w in self.successors(v) {
                if !visited[w.0] {
                    visited[w.0] = true;
                    stack.push(w);
                }
            }
        }
        Ok(visited
            .iter()
            .enumerate()
            .filter_map(|(i, &seen)| seen.then_some(VertexId(i)))
            .collect())
    }

    /// Whether `u` reaches some member of `target` (the trivial path counts,
    /// so membership alone suffices).
    pub fn connects(&self, u: VertexId, target: &VertexSet) -> Result<bool> {
        self.check_vertex(u)?;
        target.check_in(self)?;
        let reach = self.tree(&VertexSet::singleton(u))?;
        let hit = reach.iter().any(|v| target.contains(v));
        Ok(hit)
    }

    /// The graph with every edge reversed. Involutive.
    pub fn opposite(&self) -> Graph {
        let mut g = Graph::new();
        for name in &self.vertex_names {
            g.add_vertex(name).expect("names unique");
        }
        for e in &self.edges {
            g.add_edge(&e.name, &self.vertex_names[e.dst.0], &self.vertex_names[e.src.0])
                .expect("endpoints declared");
        }
        for &(src, dst) in &self.inf_edges {
            g.add_inf_edge(&self.vertex_names[dst.0], &self.vertex_names[src.0])
                .expect("endpoints declared");
        }
        g
    }

    /// Strongly connected components. Components are ordered by their
    /// smallest member and list vertices in declaration order.
    pub fn sccs(&self) -> Vec<Vec<VertexId>> {
        let info = self.scc_info();
        info.components
    }

    pub(crate) fn scc_info(&self) -> SccInfo {
        let n = self.vertex_count();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut component_of = vec![usize::MAX; n];
        let mut components: Vec<Vec<VertexId>> = Vec::new();
        let mut counter = 0usize;

        // Iterative Tarjan; frames carry the successor list position.
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut frames: Vec<(usize, Vec<VertexId>, usize)> = Vec::new();
            let succs: Vec<VertexId> = self.successors(VertexId(root)).collect();
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            frames.push((root, succs, 0));
            while let Some((v, succs, pos)) = frames.last_mut() {
                if let Some(&w) = succs.get(*pos) {
                    *pos += 1;
                    let v = *v;
                    if index[w.0] == usize::MAX {
                        index[w.0] = counter;
                        low[w.0] = counter;
                        counter += 1;
                        stack.push(w.0);
                        on_stack[w.0] = true;
                        let wsuccs: Vec<VertexId> = self.successors(w).collect();
                        frames.push((w.0, wsuccs, 0));
                    } else if on_stack[w.0] {
                        low[v] = low[v].min(index[w.0]);
                    }
                } else {
                    let v = *v;
                    frames.pop();
                    if let Some((parent, _, _)) = frames.last() {
                        low[*parent] = low[*parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w] = false;
                            comp.push(VertexId(w));
                            if w == v {
                                break;
                            }
                        }
                        comp.sort();
                        components.push(comp);
                    }
                }
            }
        }

        components.sort_by_key(|c| c[0]);
        for (ci, comp) in components.iter().enumerate() {
            for &v in comp {
                component_of[v.0] = ci;
            }
        }
        SccInfo { component_of, components }
    }

    /// One flag per vertex: lies on a closed path.
    pub fn cyclic_vertices(&self) -> Vec<bool> {
        let info = self.scc_info();
        let mut on_cycle = vec![false; self.vertex_count()];
        for comp in &info.components {
            let cyclic = comp.len() >= 2
                || comp.iter().any(|&v| self.successors(v).any(|w| w == v));
            if cyclic {
                for &v in comp {
                    on_cycle[v.0] = true;
                }
            }
        }
        on_cycle
    }

    /// Structural classification of a single vertex.
    pub fn profile(&self, v: VertexId) -> Result<VertexProfile> {
        self.check_vertex(v)?;
        let out_degree = self.out_degree(v);
        let in_degree = self.in_degree(v);
        Ok(VertexProfile {
            out_degree,
            in_degree,
            is_sink: out_degree == Degree::Finite(0),
            is_source: in_degree == Degree::Finite(0),
            is_regular: self.is_regular(v),
            is_infinite_emitter: self.is_infinite_emitter(v),
            is_bifurcation: out_degree.at_least(2),
            on_cycle: self.cyclic_vertices()[v.0],
        })
    }

    /// Initial/terminal classification of every vertex, plus the per-count
    /// summaries that renaming preserves.
    pub fn boundary_classification(&self) -> BoundaryReport {
        let mut per_vertex = Vec::with_capacity(self.vertex_count());
        for v in self.vertices() {
            let initial = {
                let all_loops = self.predecessors(v).all(|src| src == v);
                all_loops.then(|| self.in_degree(v))
            };
            let terminal = {
                let all_loops = self.successors(v).all(|dst| dst == v);
                all_loops.then(|| self.out_degree(v))
            };
            per_vertex.push(BoundaryClass { vertex: v, initial, terminal });
        }
        let mut initial_counts = std::collections::BTreeMap::new();
        let mut terminal_counts = std::collections::BTreeMap::new();
        for c in &per_vertex {
            if let Some(n) = c.initial {
                *initial_counts.entry(n).or_insert(0usize) += 1;
            }
            if let Some(n) = c.terminal {
                *terminal_counts.entry(n).or_insert(0usize) += 1;
            }
        }
        BoundaryReport { per_vertex, initial_counts, terminal_counts }
    }

    /// Whether every cycle has an exit. A parallel edge, a bundle copy or any
    /// edge off the cycle counts as an exit.
    pub fn condition_l(&self) -> bool {
        cycles_without_exits(self).is_empty()
    }
}

/// Vertices lying on cycles without exits: cycles all of whose vertices have
/// total out-degree exactly one.
pub(crate) fn cycles_without_exits(g: &Graph) -> Vec<VertexId> {
    let n = g.vertex_count();
    // The unique successor of each out-degree-one vertex; bundles disqualify.
    let succ: Vec<Option<usize>> = (0..n)
        .map(|v| {
            let v = VertexId(v);
            match (g.out_edges(v), g.is_infinite_emitter(v)) {
                ([e], false) => Some(g.edge_dst(*e).0),
                _ => None,
            }
        })
        .collect();

    let mut state = vec![0u8; n]; // 0 unvisited, 1 on current walk, 2 done
    let mut on_cycle = vec![false; n];
    for start in 0..n {
        if state[start] != 0 || succ[start].is_none() {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = start;
        loop {
            state[cur] = 1;
            walk.push(cur);
            match succ[cur] {
                Some(next) if state[next] == 0 => cur = next,
                Some(next) if state[next] == 1 => {
                    // Closed the walk: everything from `next` onwards cycles.
                    let cut = walk.iter().position(|&w| w == next).expect("on walk");
                    for &w in &walk[cut..] {
                        on_cycle[w] = true;
                    }
                    break;
                }
                _ => break, // dead end or a vertex already resolved
            }
        }
        for &w in &walk {
            state[w] = 2;
        }
    }
    (0..n).filter(|&v| on_cycle[v]).map(VertexId).collect()
}

pub(crate) struct SccInfo {
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<VertexId>>,
}

/// Degrees and structural flags of one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexProfile {
    pub out_degree: Degree,
    pub in_degree: Degree,
    pub is_sink: bool,
    pub is_source: bool,
    pub is_regular: bool,
    pub is_infinite_emitter: bool,
    pub is_bifurcation: bool,
    pub on_cycle: bool,
}

/// Initial/terminal status of one vertex. `initial` is set when every edge
/// into the vertex is a loop (the count of those loops attached), `terminal`
/// when every edge out of it is a loop. A vertex may be both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryClass {
    pub vertex: VertexId,
    pub initial: Option<Degree>,
    pub terminal: Option<Degree>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryReport {
    pub per_vertex: Vec<BoundaryClass>,
    /// How many initial vertices carry each loop count.
    pub initial_counts: std::collections::BTreeMap<Degree, usize>,
    /// How many terminal vertices carry each loop count.
    pub terminal_counts: std::collections::BTreeMap<Degree, usize>,
}
