use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: negative multiplicity {value}")]
    NegativeMultiplicity { line: usize, value: i64 },
    #[error("line {line}: loop at vertex {vertex} is not allowed")]
    Loop { line: usize, vertex: usize },
    #[error("missing `n <count>` header")]
    MissingHeader,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {n} vertices; at most {max} are supported")]
    TooManyVertices { n: usize, max: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0} is not allowed")]
    Loop(usize),
    #[error("edge subset removes {requested} copies of {u}-{v} but only {available} exist")]
    SubsetExceedsMultiplicity {
        u: usize,
        v: usize,
        requested: u32,
        available: u32,
    },
    #[error("{what} refused: {actual} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        actual: usize,
        bound: usize,
    },
    #[error("palette assignment has {got} vertices, graph has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coloring is not valid for this graph: {0}")]
    InvalidColoring(String),
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed report: {source}")]
    Format {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: inconsistent report: {message}")]
    Inconsistent { path: PathBuf, message: String },
}

/// A proved statement failed on a concrete graph. Carries the graph in the
/// text graph format so it can be replayed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("hard assertion `{property}` failed: {detail}\n{graph}")]
pub struct AssertionFailure {
    pub property: String,
    pub detail: String,
    pub graph: String,
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Assertion(#[from] AssertionFailure),
    #[error("failed to build worker pool: {0}")]
    Pool(String),
}
