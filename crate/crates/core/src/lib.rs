//! Vertex-set calculus for the graphs behind Leavitt path algebras.
//!
//! The crate computes the structural vertex sets that classify the graded
//! ideals of a path algebra purely at the graph level:
//!
//! * [`graph`] — finite directed multigraphs with named vertices/edges,
//!   infinite-emitter bundles, reachability and cycle analysis;
//! * [`topology`] — the connection topology on the vertex set (closure,
//!   open/closed/clopen, interior/exterior/boundary, closed-set enumeration,
//!   density, continuity of vertex maps);
//! * [`hsets`] — hereditary and saturated sets, their lattice, graph
//!   quotients and the annihilator calculus;
//! * [`functors`] — the built-in point functors and the expression language
//!   combining them;
//! * [`series`] — ascending quotient chains and their direct graph
//!   characterizations, cross-checked against each other;
//! * [`moves`] — the shift move and its continuity guarantees.
//!
//! Everything is a pure function over immutable graphs; values can be shared
//! across threads freely, and identical inputs always produce identical,
//! canonically ordered outputs.
//!
//! ```
//! use lpa_core::{FunctorExpr, Graph};
//! use lpa_core::topology::{closed_sets, DEFAULT_CLOSED_SETS_CAP};
//!
//! let g = Graph::parse("vertex v\nvertex u\nvertex w\nedge e v v\nedge f v u\nedge g v w")?;
//! let sets = closed_sets(&g, DEFAULT_CLOSED_SETS_CAP)?;
//! assert_eq!(sets.len(), 5);
//! assert_eq!(sets[2].names(&g), ["u", "v"]);
//!
//! let pure = FunctorExpr::parse("ext(plce)")?.eval(&g)?;
//! assert!(pure.is_empty());
//! # Ok::<(), lpa_core::Error>(())
//! ```

pub mod error;
pub mod functors;
pub mod graph;
pub mod hsets;
pub mod moves;
pub mod series;
pub mod set;
pub mod topology;

pub use error::{Error, Result};
pub use functors::FunctorExpr;
pub use graph::{Degree, EdgeId, Graph, VertexId, VertexProfile};
pub use hsets::{HSet, QuotientResult};
pub use moves::{ShiftContinuityReport, ShiftSpec};
pub use series::{CrossCheckReport, SeriesChain, SeriesKind};
pub use set::VertexSet;
pub use topology::{ContinuityReport, VertexMap};
