use thiserror::Error;

use crate::geometry::Impropriety;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: edge {tail} {head} {label} duplicates an existing edge")]
    DuplicateEdge { line: usize, tail: String, head: String, label: String },

    #[error("line {line}: position of `{vertex}` lies outside [0,1)^3")]
    PositionOutsideCell { line: usize, vertex: String },

    #[error("degenerate loop at vertex {0} with zero label")]
    DegenerateLoop(usize),

    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),

    #[error("operation requires depth 1, graph has depth {0}")]
    DepthTooLarge(i64),

    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i64),

    #[error("operation requires a single-vertex quotient graph, got {0} vertices")]
    NotSingleVertex(usize),

    #[error("net is not proper: {0}")]
    Improper(Impropriety),

    #[error("position count {got} does not match vertex count {expected}")]
    PositionCount { expected: usize, got: usize },

    #[error("position {0} is outside [0,1)^3")]
    PositionOutsideUnitCell(String),

    #[error("unknown export format `{0}`")]
    UnknownFormat(String),

    #[error("vertex {0} has no fixed position")]
    MissingPosition(usize),

    #[error("point {0} lies in an inadmissible cell")]
    InadmissiblePoint(String),

    #[error("{0}")]
    Census(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
