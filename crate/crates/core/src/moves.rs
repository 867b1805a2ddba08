//! The shift move: re-route the out-edges of a vertex `u` through a vertex
//! `v`.
//!
//! A shift takes an injective, range-preserving map `theta` from the
//! out-edges of `u` into the out-edges of `v`, deletes the image of `theta`
//! and adds a single fresh edge `v -> u`. The vertex set is unchanged and
//! the identity on vertices is always continuous for the connection
//! topologies of the old and new graph; [`shift_continuity_report`] verifies
//! that on both the pairwise and the closed-set level, so a `false` anywhere
//! flags a bug rather than a property of the input.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::set::VertexSet;
use crate::topology;

/// Name given to the fresh edge; suffixed with a counter on collision.
const FRESH_EDGE_NAME: &str = "__shift";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftSpec {
    /// The vertex whose out-edges get re-routed; the fresh edge points here.
    pub u: VertexId,
    /// The vertex that emits the image edges and the fresh edge.
    pub v: VertexId,
    /// Pairs `(f, theta(f))` with `f` an out-edge of `u` and `theta(f)` an
    /// out-edge of `v`.
    pub theta: Vec<(EdgeId, EdgeId)>,
}

impl ShiftSpec {
    pub fn from_names(g: &Graph, u: &str, v: &str, pairs: &[(String, String)]) -> Result<ShiftSpec> {
        let u = g.vertex(u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
        let v = g.vertex(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        let mut theta = Vec::with_capacity(pairs.len());
        for (f, img) in pairs {
            let f = g.edge(f).ok_or_else(|| Error::UnknownEdge(f.clone()))?;
            let img = g.edge(img).ok_or_else(|| Error::UnknownEdge(img.clone()))?;
            theta.push((f, img));
        }
        Ok(ShiftSpec { u, v, theta })
    }
}

/// Checks every invariant of the specification, reporting all violations at
/// once: `theta` must be defined exactly on the out-edges of `u`, injective,
/// land in the out-edges of `v`, and preserve ranges. Infinite emitters at
/// `u` are rejected because `theta` is given edge by edge.
pub fn validate_shift(g: &Graph, spec: &ShiftSpec) -> Result<()> {
    let mut violations = Vec::new();
    if spec.u.0 >= g.vertex_count() || spec.v.0 >= g.vertex_count() {
        return Err(Error::InvalidShift(vec!["vertex out of range".to_string()]));
    }
    let u_name = g.vertex_name(spec.u);
    let v_name = g.vertex_name(spec.v);
    if spec.u == spec.v {
        // With u = v the map would delete the very edges that re-route the
        // lost connections, breaking the continuity guarantee.
        violations.push(format!("`{u_name}` cannot be shifted into itself"));
    }
    if g.is_infinite_emitter(spec.u) {
        violations.push(format!(
            "`{u_name}` is an infinite emitter, its out-edges cannot be mapped edgewise"
        ));
    }

    let mut seen_domain = Vec::new();
    let mut seen_image = Vec::new();
    for &(f, img) in &spec.theta {
        let f_name = g.edge_name(f);
        let img_name = g.edge_name(img);
        if g.edge_src(f) != spec.u {
            violations.push(format!("domain edge `{f_name}` does not start at `{u_name}`"));
        }
        if g.edge_src(img) != spec.v {
            violations.push(format!("image edge `{img_name}` does not start at `{v_name}`"));
        }
        if g.edge_dst(f) != g.edge_dst(img) {
            violations.push(format!("range mismatch: `{f_name}` and `{img_name}` end differently"));
        }
        if seen_domain.contains(&f) {
            violations.push(format!("edge `{f_name}` mapped twice"));
        }
        if seen_image.contains(&img) {
            violations.push(format!("not injective: image edge `{img_name}` repeated"));
        }
        seen_domain.push(f);
        seen_image.push(img);
    }
    for &f in g.out_edges(spec.u) {
        if !seen_domain.contains(&f) {
            violations.push(format!("out-edge `{}` of `{u_name}` has no image", g.edge_name(f)));
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidShift(violations))
    }
}

/// Builds the shifted graph: same vertices, the image of `theta` removed and
/// one fresh edge from `v` to `u` appended.
pub fn shift_graph(g: &Graph, spec: &ShiftSpec) -> Result<Graph> {
    validate_shift(g, spec)?;
    let removed: Vec<EdgeId> = spec.theta.iter().map(|&(_, img)| img).collect();
    let mut out = Graph::new();
    for v in g.vertices() {
        out.add_vertex(g.vertex_name(v)).expect("names unique");
    }
    for e in g.edge_ids() {
        if !removed.contains(&e) {
            out.add_edge(
                g.edge_name(e),
                g.vertex_name(g.edge_src(e)),
                g.vertex_name(g.edge_dst(e)),
            )
            .expect("endpoints declared");
        }
    }
    for &(src, dst) in g.inf_edges() {
        out.add_inf_edge(g.vertex_name(src), g.vertex_name(dst)).expect("endpoints declared");
    }
    let mut fresh = FRESH_EDGE_NAME.to_string();
    let mut counter = 2;
    while out.edge(&fresh).is_some() {
        fresh = format!("{FRESH_EDGE_NAME}{counter}");
        counter += 1;
    }
    out.add_edge(&fresh, g.vertex_name(spec.v), g.vertex_name(spec.u))
        .expect("fresh name and declared endpoints");
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftContinuityReport {
    /// Reachability in the original graph implies reachability in the
    /// shifted graph, for every vertex pair.
    pub pairwise_ok: bool,
    /// Every closed set of the shifted graph is closed in the original;
    /// `None` when the graph exceeds the enumeration cap.
    pub closed_sets_ok: Option<bool>,
}

/// Verifies the continuity guarantees of a shift on both levels.
pub fn shift_continuity_report(
    g: &Graph,
    spec: &ShiftSpec,
    cap: usize,
) -> Result<ShiftContinuityReport> {
    let shifted = shift_graph(g, spec)?;
    let pairwise_ok = g.vertices().all(|x| {
        let before = g.tree(&VertexSet::singleton(x)).expect("vertex in range");
        let after = shifted.tree(&VertexSet::singleton(x)).expect("same vertex set");
        before.is_subset(&after)
    });
    let closed_sets_ok = match topology::closed_sets_iter(&shifted, cap) {
        Ok(iter) => {
            let mut all_closed = true;
            for s in iter {
                if !topology::is_closed(g, &s).expect("same vertex set") {
                    all_closed = false;
                    break;
                }
            }
            Some(all_closed)
        }
        Err(Error::CapExceeded { .. }) => None,
        Err(other) => return Err(other),
    };
    Ok(ShiftContinuityReport { pairwise_ok, closed_sets_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::DEFAULT_CLOSED_SETS_CAP;

    fn pair_graph() -> Graph {
        Graph::parse("vertex u\nvertex v\nvertex w\nedge a u w\nedge b v w").unwrap()
    }

    fn spec(g: &Graph, u: &str, v: &str, pairs: &[(&str, &str)]) -> ShiftSpec {
        let pairs: Vec<(String, String)> =
            pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        ShiftSpec::from_names(g, u, v, &pairs).unwrap()
    }

    #[test]
    fn valid_spec_passes() {
        let g = pair_graph();
        let s = spec(&g, "u", "v", &[("a", "b")]);
        assert!(validate_shift(&g, &s).is_ok());
    }

    #[test]
    fn range_mismatch_is_reported() {
        let g = Graph::parse("vertex u\nvertex v\nvertex w\nvertex x\nedge a u w\nedge b v x")
            .unwrap();
        let s = spec(&g, "u", "v", &[("a", "b")]);
        match validate_shift(&g, &s) {
            Err(Error::InvalidShift(violations)) => {
                assert!(violations.iter().any(|m| m.contains("range mismatch")));
            }
            other => panic!("expected shift violations, got {other:?}"),
        }
    }

    #[test]
    fn domain_must_be_out_edges_of_u() {
        let g = Graph::parse("vertex u\nvertex v\nvertex w\nedge a w w\nedge b v w").unwrap();
        let s = spec(&g, "u", "v", &[("a", "b")]);
        match validate_shift(&g, &s) {
            Err(Error::InvalidShift(violations)) => {
                assert!(violations.iter().any(|m| m.contains("does not start at")));
            }
            other => panic!("expected shift violations, got {other:?}"),
        }
    }

    #[test]
    fn theta_must_be_total() {
        let g = Graph::parse("vertex u\nvertex v\nvertex w\nedge a u w\nedge b v w").unwrap();
        let s = spec(&g, "u", "v", &[]);
        match validate_shift(&g, &s) {
            Err(Error::InvalidShift(violations)) => {
                assert!(violations.iter().any(|m| m.contains("has no image")));
            }
            other => panic!("expected shift violations, got {other:?}"),
        }
    }

    #[test]
    fn emitters_at_u_are_rejected() {
        let g = Graph::parse("vertex u\nvertex v\ninfedge u v\nedge b v v").unwrap();
        let s = spec(&g, "u", "v", &[]);
        assert!(matches!(validate_shift(&g, &s), Err(Error::InvalidShift(_))));
    }

    #[test]
    fn shifting_a_vertex_into_itself_is_rejected() {
        let g = Graph::parse("vertex u\nvertex w\nedge a u w").unwrap();
        let s = spec(&g, "u", "u", &[("a", "a")]);
        match validate_shift(&g, &s) {
            Err(Error::InvalidShift(violations)) => {
                assert!(violations.iter().any(|m| m.contains("itself")));
            }
            other => panic!("expected shift violations, got {other:?}"),
        }
    }

    #[test]
    fn shift_replaces_image_with_fresh_edge() {
        let g = pair_graph();
        let s = spec(&g, "u", "v", &[("a", "b")]);
        let f = shift_graph(&g, &s).unwrap();
        assert_eq!(
            f,
            Graph::parse("vertex u\nvertex v\nvertex w\nedge a u w\nedge __shift v u").unwrap()
        );
    }

    #[test]
    fn empty_theta_just_adds_an_edge() {
        let g = Graph::parse("vertex v\nvertex u\nvertex w\nedge e v v\nedge f v u\nedge g v w")
            .unwrap();
        // u is a sink, so the empty map is the only valid theta.
        let s = spec(&g, "u", "v", &[]);
        let f = shift_graph(&g, &s).unwrap();
        assert_eq!(f.edge_count(), 4);
        let fresh = f.edge("__shift").unwrap();
        assert_eq!(f.vertex_name(f.edge_src(fresh)), "v");
        assert_eq!(f.vertex_name(f.edge_dst(fresh)), "u");
    }

    #[test]
    fn fresh_edge_name_avoids_collisions() {
        let g = Graph::parse("vertex u\nvertex v\nedge __shift v v").unwrap();
        let s = spec(&g, "u", "v", &[]);
        let f = shift_graph(&g, &s).unwrap();
        assert!(f.edge("__shift2").is_some());
    }

    #[test]
    fn edge_count_bookkeeping() {
        let g = pair_graph();
        let s = spec(&g, "u", "v", &[("a", "b")]);
        let f = shift_graph(&g, &s).unwrap();
        assert_eq!(f.edge_count(), g.edge_count() - s.theta.len() + 1);
        assert_eq!(f.vertex_count(), g.vertex_count());
    }

    #[test]
    fn continuity_report_on_examples() {
        let g = pair_graph();
        let s = spec(&g, "u", "v", &[("a", "b")]);
        let report = shift_continuity_report(&g, &s, DEFAULT_CLOSED_SETS_CAP).unwrap();
        assert!(report.pairwise_ok);
        assert_eq!(report.closed_sets_ok, Some(true));

        let fig1 = Graph::parse("vertex v\nvertex u\nvertex w\nedge e v v\nedge f v u\nedge g v w")
            .unwrap();
        let s = spec(&fig1, "u", "v", &[]);
        let report = shift_continuity_report(&fig1, &s, DEFAULT_CLOSED_SETS_CAP).unwrap();
        assert!(report.pairwise_ok);
        assert_eq!(report.closed_sets_ok, Some(true));
    }

    #[test]
    fn continuity_skips_when_capped() {
        let g = pair_graph();
        let s = spec(&g, "u", "v", &[("a", "b")]);
        let report = shift_continuity_report(&g, &s, 2).unwrap();
        assert_eq!(report.closed_sets_ok, None);
    }
}
