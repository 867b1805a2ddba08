//! Point functors — graph-to-vertex-set assignments — and the expression
//! language that combines them.
//!
//! The built-ins:
//!
//! * `Pl` — line points: vertices whose tree has no bifurcation, no cycle
//!   and no infinite emitter.
//! * `Pc` — vertices on cycles without exits (every cycle vertex has total
//!   out-degree one).
//! * `Pec` — vertices on extreme cycles: cycles with exits from which every
//!   outgoing path can return.
//! * `Pbinf` — vertices whose tree contains an infinite emitter. (The
//!   infinitely-many-bifurcations branch of the definition cannot occur on a
//!   finite vertex set, so on emitter-free graphs this is empty.)
//! * `Plce` — the union of the first three.
//! * `Pbpinf` — the exterior of `Plce`: vertices with pure infinite
//!   bifurcations. Always hereditary and saturated.
//!
//! Combinators: `closure` (hereditary and saturated closure), `ext`
//! (topological exterior), `union`, `inter`, `star` (quotient composition)
//! and `series` (iterated quotient chain, see [`crate::series`]). `star` and
//! `series` are only defined for hereditary and saturated arguments, so
//! evaluation closes their children first.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{cycles_without_exits, Graph};
use crate::hsets::hs_closure;
use crate::series;
use crate::set::VertexSet;
use crate::topology;

/// Vertices whose tree contains neither a bifurcation nor a cycle. A vertex
/// qualifies exactly when it reaches no bifurcation, emitter or cycle
/// vertex, so this is the exterior of the set of those.
pub fn line_points(g: &Graph) -> VertexSet {
    let on_cycle = g.cyclic_vertices();
    let blocking: VertexSet = g
        .vertices()
        .filter(|&v| on_cycle[v.0] || g.out_degree(v).at_least(2))
        .collect();
    topology::exterior(g, &blocking).expect("set built from the graph")
}

/// Vertices lying on cycles without exits.
pub fn no_exit_cycle_points(g: &Graph) -> VertexSet {
    cycles_without_exits(g).into_iter().collect()
}

/// Vertices lying on extreme cycles, computed through the condensation: a
/// vertex qualifies when its strongly connected component has no edge
/// leaving it (so every outgoing path can come back), contains a cycle, and
/// contains a vertex of out-degree at least two (so some cycle through the
/// vertex has an exit).
pub fn extreme_cycle_points(g: &Graph) -> VertexSet {
    let info = g.scc_info();
    let mut out = VertexSet::new();
    for comp in &info.components {
        let cid = info.component_of[comp[0].0];
        let terminal = comp
            .iter()
            .all(|&v| g.successors(v).all(|w| info.component_of[w.0] == cid));
        if !terminal {
            continue;
        }
        let has_cycle =
            comp.len() >= 2 || comp.iter().any(|&v| g.successors(v).any(|w| w == v));
        let has_exit = comp.iter().any(|&v| g.out_degree(v).at_least(2));
        if has_cycle && has_exit {
            for &v in comp {
                out.insert(v);
            }
        }
    }
    out
}

/// Vertices whose tree contains an infinite emitter: everything connecting
/// to an emitter.
pub fn infinite_bifurcation_points(g: &Graph) -> VertexSet {
    let emitters: VertexSet = g.vertices().filter(|&v| g.is_infinite_emitter(v)).collect();
    topology::closure(g, &emitters).expect("set built from the graph")
}

/// Union of line points, no-exit-cycle points and extreme-cycle points.
pub fn lce_points(g: &Graph) -> VertexSet {
    line_points(g)
        .union(&no_exit_cycle_points(g))
        .union(&extreme_cycle_points(g))
}

/// Vertices with pure infinite bifurcations: those not connecting to
/// [`lce_points`]. Hereditary and saturated on every graph.
pub fn pure_infinite_bifurcation_points(g: &Graph) -> VertexSet {
    topology::exterior(g, &lce_points(g)).expect("set built from the graph")
}

/// A closed functor expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorExpr {
    Pl,
    Pc,
    Pec,
    Pbinf,
    Plce,
    Pbpinf,
    Empty,
    Full,
    Closure(Box<FunctorExpr>),
    Ext(Box<FunctorExpr>),
    Union(Box<FunctorExpr>, Box<FunctorExpr>),
    Inter(Box<FunctorExpr>, Box<FunctorExpr>),
    /// `Star(outer, inner)`: evaluate `inner`, quotient by it, evaluate
    /// `outer` there and lift back.
    Star(Box<FunctorExpr>, Box<FunctorExpr>),
    /// `Series(base, n)`: the n-th stage of the quotient series of `base`.
    Series(Box<FunctorExpr>, u32),
}

impl FunctorExpr {
    /// Parses the expression grammar
    /// `expr := Pl | Pc | Pec | Pbinf | Plce | Pbpinf | Empty | Full |
    /// closure(expr) | ext(expr) | union(expr,expr) | inter(expr,expr) |
    /// star(expr,expr) | series(expr,INT)`, case-insensitive and
    /// whitespace-tolerant.
    pub fn parse(text: &str) -> Result<FunctorExpr> {
        let mut parser = ExprParser { text: text.as_bytes(), pos: 0 };
        let expr = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.text.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(expr)
    }

    /// Evaluates on a graph. Children of `star` and `series` are closed
    /// before use, so both always act on hereditary and saturated sets.
    pub fn eval(&self, g: &Graph) -> Result<VertexSet> {
        use FunctorExpr::*;
        match self {
            Pl => Ok(line_points(g)),
            Pc => Ok(no_exit_cycle_points(g)),
            Pec => Ok(extreme_cycle_points(g)),
            Pbinf => Ok(infinite_bifurcation_points(g)),
            Plce => Ok(lce_points(g)),
            Pbpinf => Ok(pure_infinite_bifurcation_points(g)),
            Empty => Ok(VertexSet::new()),
            Full => Ok(VertexSet::full(g)),
            Closure(e) => Ok(hs_closure(g, &e.eval(g)?)?.into_members()),
            Ext(e) => topology::exterior(g, &e.eval(g)?),
            Union(a, b) => Ok(a.eval(g)?.union(&b.eval(g)?)),
            Inter(a, b) => Ok(a.eval(g)?.intersection(&b.eval(g)?)),
            Star(outer, inner) => {
                let first = hs_closure(g, &inner.eval(g)?)?;
                Ok(series::series_step(g, outer, &first)?.into_members())
            }
            Series(base, n) => {
                let chain = series::series(g, base, *n as usize)?.chain;
                Ok(chain.into_iter().next_back().expect("series is nonempty").into_members())
            }
        }
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctorExpr::*;
        match self {
            Pl => write!(f, "pl"),
            Pc => write!(f, "pc"),
            Pec => write!(f, "pec"),
            Pbinf => write!(f, "pbinf"),
            Plce => write!(f, "plce"),
            Pbpinf => write!(f, "pbpinf"),
            Empty => write!(f, "empty"),
            Full => write!(f, "full"),
            Closure(e) => write!(f, "closure({e})"),
            Ext(e) => write!(f, "ext({e})"),
            Union(a, b) => write!(f, "union({a},{b})"),
            Inter(a, b) => write!(f, "inter({a},{b})"),
            Star(a, b) => write!(f, "star({a},{b})"),
            Series(e, n) => write!(f, "series({e},{n})"),
        }
    }
}

struct ExprParser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::ExprParse { pos: self.pos + 1, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        self.skip_ws();
        if self.text.get(self.pos) == Some(&ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", ch as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .text
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a functor name"));
        }
        Ok(std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii identifier")
            .to_ascii_lowercase())
    }

    fn integer(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii digits")
            .parse::<u32>()
            .map_err(|_| Error::ExprParse { pos: start + 1, msg: "integer too large".into() })
    }

    fn expr(&mut self) -> Result<FunctorExpr> {
        use FunctorExpr::*;
        self.skip_ws();
        let at = self.pos;
        let name = self.ident()?;
        match name.as_str() {
            "pl" => Ok(Pl),
            "pc" => Ok(Pc),
            "pec" => Ok(Pec),
            "pbinf" => Ok(Pbinf),
            "plce" => Ok(Plce),
            "pbpinf" => Ok(Pbpinf),
            "empty" => Ok(Empty),
            "full" => Ok(Full),
            "closure" | "ext" => {
                self.expect(b'(')?;
                let inner = Box::new(self.expr()?);
                self.expect(b')')?;
                Ok(if name == "closure" { Closure(inner) } else { Ext(inner) })
            }
            "union" | "inter" | "star" => {
                self.expect(b'(')?;
                let a = Box::new(self.expr()?);
                self.expect(b',')?;
                let b = Box::new(self.expr()?);
                self.expect(b')')?;
                Ok(match name.as_str() {
                    "union" => Union(a, b),
                    "inter" => Inter(a, b),
                    _ => Star(a, b),
                })
            }
            "series" => {
                self.expect(b'(')?;
                let base = Box::new(self.expr()?);
                self.expect(b',')?;
                let n = self.integer()?;
                self.expect(b')')?;
                if n == 0 {
                    return Err(Error::SeriesIndexZero);
                }
                Ok(Series(base, n))
            }
            other => Err(Error::ExprParse {
                pos: at + 1,
                msg: format!("unknown functor `{other}`"),
            }),
        }
    }
}
