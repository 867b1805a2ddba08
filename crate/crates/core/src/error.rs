//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed graph text.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Malformed functor expression.
    #[error("column {pos}: {msg}")]
    ExprParse { pos: usize, msg: String },

    /// A vertex name that the graph does not declare.
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    /// An edge name that the graph does not declare.
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),

    /// A `VertexId` that does not belong to the graph it was used with.
    #[error("vertex index {index} is out of range for a graph with {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },

    /// The set has an edge leading out of it.
    #[error("set is not hereditary: vertex `{vertex}` has an edge to `{target}` outside the set")]
    NotHereditary { vertex: String, target: String },

    /// A regular vertex with all edge targets inside the set is missing from it.
    #[error("set is not saturated: regular vertex `{vertex}` has every edge target in the set")]
    NotSaturated { vertex: String },

    /// An enumeration was requested on a graph larger than the configured cap.
    #[error("graph has {vertices} vertices, enumeration cap is {cap}")]
    CapExceeded { vertices: usize, cap: usize },

    /// The operation is only defined for graphs without infinite emitters.
    #[error("vertex `{vertex}` is an infinite emitter: {context}")]
    InfiniteEmitter { vertex: String, context: String },

    /// A vertex map that does not cover the whole source vertex set.
    #[error("vertex map is not total: no image for `{vertex}`")]
    MapNotTotal { vertex: String },

    /// A shift specification violating one or more invariants.
    #[error("invalid shift specification: {}", .0.join("; "))]
    InvalidShift(Vec<String>),

    /// Series stages are indexed from 1.
    #[error("series index must be at least 1")]
    SeriesIndexZero,
}
