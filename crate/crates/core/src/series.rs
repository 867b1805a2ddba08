//! Ascending chains of hereditary and saturated sets built by iterated
//! quotients, plus direct graph characterizations of the line-point and
//! no-exit-cycle chains for cross-checking.
//!
//! Given a base functor `H`, the chain starts at the closure of `H` and each
//! later stage adds the closure of `H` evaluated on the quotient by the
//! previous stage, lifted back along the kept vertex names. The direct
//! routes recompute the same chains from per-vertex criteria without ever
//! building a quotient, which makes the two routes genuinely independent.
//!
//! The direct characterizations are established for row-finite graphs only,
//! so both refuse graphs with infinite emitters.

use crate::error::{Error, Result};
use crate::functors::{line_points, no_exit_cycle_points, FunctorExpr};
use crate::graph::Graph;
use crate::hsets::{hs_closure, quotient, HSet};
use crate::set::VertexSet;
use crate::topology;

/// One step of the quotient chain: the union of the current stage with the
/// closed base functor evaluated on the quotient, lifted back by name.
pub fn series_step(g: &Graph, base: &FunctorExpr, current: &HSet) -> Result<HSet> {
    let q = quotient(g, current)?;
    let in_quotient = hs_closure(&q.graph, &base.eval(&q.graph)?)?;
    let lifted: VertexSet = in_quotient.members().iter().map(|v| q.kept[v.0]).collect();
    HSet::certify(g, current.members().union(&lifted))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesChain {
    /// Stages 1 through n.
    pub chain: Vec<HSet>,
    /// First stage index k (1-based) with stage k equal to stage k+1, when
    /// that happens within the computed window.
    pub stabilized_at: Option<usize>,
}

/// Stages 1..=n of the quotient chain of `base` (closed automatically).
pub fn series(g: &Graph, base: &FunctorExpr, n: usize) -> Result<SeriesChain> {
    if n == 0 {
        return Err(Error::SeriesIndexZero);
    }
    let mut chain = Vec::with_capacity(n);
    chain.push(hs_closure(g, &base.eval(g)?)?);
    let mut stabilized_at = None;
    for k in 1..n {
        let next = series_step(g, base, &chain[k - 1])?;
        if stabilized_at.is_none() && next == chain[k - 1] {
            stabilized_at = Some(k);
        }
        chain.push(next);
    }
    Ok(SeriesChain { chain, stabilized_at })
}

/// `|a \ b| <= 1`: `a` lies in `b` except for at most one vertex.
pub fn subset_except_one(a: &VertexSet, b: &VertexSet) -> bool {
    a.is_subset_except_one(b)
}

fn refuse_emitters(g: &Graph, context: &str) -> Result<()> {
    if let Some(v) = g.vertices().find(|&v| g.is_infinite_emitter(v)) {
        return Err(Error::InfiniteEmitter {
            vertex: g.vertex_name(v).to_string(),
            context: context.to_string(),
        });
    }
    Ok(())
}

/// One stage of a direct chain: the raw stage set and its closure. The
/// first stage's `pre_closure` is the bare point-functor value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectStage {
    pub pre_closure: VertexSet,
    pub closed: HSet,
}

/// Direct route for the line-point chain. Stage n+1 is the closure of the
/// vertices whose tree is acyclic and whose every tree member has range
/// contained in stage n except for at most one target.
pub fn pl_series_direct(g: &Graph, n: usize) -> Result<Vec<HSet>> {
    Ok(pl_series_direct_stages(g, n)?.into_iter().map(|s| s.closed).collect())
}

/// [`pl_series_direct`] with the pre-closure stage sets kept for reporting.
pub fn pl_series_direct_stages(g: &Graph, n: usize) -> Result<Vec<DirectStage>> {
    refuse_emitters(g, "the direct line-point chain is defined for row-finite graphs")?;
    if n == 0 {
        return Err(Error::SeriesIndexZero);
    }
    let on_cycle = g.cyclic_vertices();
    let first = line_points(g);
    let mut chain = vec![DirectStage { closed: hs_closure(g, &first)?, pre_closure: first }];
    for _ in 1..n {
        let prev = chain.last().expect("chain nonempty");
        let stage = pl_stage_set(g, &on_cycle, prev.closed.members());
        debug_assert!(stage.iter().all(|v| !on_cycle[v.0]));
        chain.push(DirectStage { closed: hs_closure(g, &stage)?, pre_closure: stage });
    }
    Ok(chain)
}

/// The pre-closure stage set of the line-point chain: a vertex qualifies
/// when it reaches no cycle vertex and no vertex with two or more range
/// members outside `prev` — i.e. the exterior of the blocking vertices.
fn pl_stage_set(g: &Graph, on_cycle: &[bool], prev: &VertexSet) -> VertexSet {
    let blocking: VertexSet = g
        .vertices()
        .filter(|&w| on_cycle[w.0] || !g.range_set(w).is_subset_except_one(prev))
        .collect();
    topology::exterior(g, &blocking).expect("set built from the graph")
}

/// Direct route for the no-exit-cycle chain. Stage n+1 is the closure of the
/// vertices lying on a cycle all of whose exits land in stage n.
pub fn pc_series_direct(g: &Graph, n: usize) -> Result<Vec<HSet>> {
    Ok(pc_series_direct_stages(g, n)?.into_iter().map(|s| s.closed).collect())
}

/// [`pc_series_direct`] with the pre-closure stage sets kept for reporting.
pub fn pc_series_direct_stages(g: &Graph, n: usize) -> Result<Vec<DirectStage>> {
    refuse_emitters(g, "the direct no-exit-cycle chain is defined for row-finite graphs")?;
    if n == 0 {
        return Err(Error::SeriesIndexZero);
    }
    let first = no_exit_cycle_points(g);
    let mut chain = vec![DirectStage { closed: hs_closure(g, &first)?, pre_closure: first }];
    for _ in 1..n {
        let prev = chain.last().expect("chain nonempty");
        let stage = pc_stage_set(g, prev.closed.members());
        chain.push(DirectStage { closed: hs_closure(g, &stage)?, pre_closure: stage });
    }
    Ok(chain)
}

/// The pre-closure stage set of the no-exit-cycle chain.
///
/// A cycle qualifies when every edge off it lands in `prev`, so a cycle
/// vertex may keep at most one edge with target outside `prev` and that edge
/// must be the cycle edge. Keeping, per vertex, either its single
/// outside-targeting edge or (when there is none) all of its edges yields a
/// subgraph whose cycles are exactly the qualifying ones.
fn pc_stage_set(g: &Graph, prev: &VertexSet) -> VertexSet {
    let mut sub = Graph::new();
    for v in g.vertices() {
        sub.add_vertex(g.vertex_name(v)).expect("names unique");
    }
    for v in g.vertices() {
        let live: Vec<_> = g
            .out_edges(v)
            .iter()
            .copied()
            .filter(|&e| !prev.contains(g.edge_dst(e)))
            .collect();
        let usable: &[_] = match live.len() {
            0 => g.out_edges(v),
            1 => &live,
            _ => &[],
        };
        for &e in usable {
            sub.add_edge(
                g.edge_name(e),
                g.vertex_name(v),
                g.vertex_name(g.edge_dst(e)),
            )
            .expect("endpoints declared");
        }
    }
    sub.cyclic_vertices()
        .into_iter()
        .enumerate()
        .filter_map(|(i, cyc)| cyc.then_some(crate::graph::VertexId(i)))
        .collect()
}

/// Which chain a cross-check runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    LinePoints,
    NoExitCycles,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub agree: bool,
    /// First stage (1-based) where the routes differ.
    pub first_divergence: Option<usize>,
    pub quotient_chain: Vec<HSet>,
    pub direct_chain: Vec<HSet>,
}

/// Runs the quotient route and the direct route side by side and compares
/// stage by stage.
pub fn cross_check_series(g: &Graph, kind: SeriesKind, n: usize) -> Result<CrossCheckReport> {
    let (base, direct_chain) = match kind {
        SeriesKind::LinePoints => (FunctorExpr::Pl, pl_series_direct(g, n)?),
        SeriesKind::NoExitCycles => (FunctorExpr::Pc, pc_series_direct(g, n)?),
    };
    let quotient_chain = series(g, &base, n)?.chain;
    let first_divergence =
        (0..n).find(|&i| quotient_chain[i] != direct_chain[i]).map(|i| i + 1);
    Ok(CrossCheckReport {
        agree: first_divergence.is_none(),
        first_divergence,
        quotient_chain,
        direct_chain,
    })
}
