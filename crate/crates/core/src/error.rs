use thiserror::Error;

/// Errors raised by graph construction, clustering and the axiom harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} edge weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("edge weight must be finite and strictly positive, got {0}")]
    InvalidWeight(f64),
    #[error("scale factor must be finite and strictly positive, got {0}")]
    InvalidScale(f64),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("vertex count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("graphs have different edge sets")]
    SupportMismatch,
    #[error("operation requires a complete graph")]
    NotComplete,
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("invalid expansive map: {0}")]
    InvalidMap(String),
    #[error("negative argument {0} passed to an expansive map")]
    NegativeArgument(f64),
    #[error("distance is not a metric: triangle inequality fails at ({0}, {1}, {2})")]
    NotMetric(usize, usize, usize),
    #[error("aligned triple ({0}, {1}, {2})")]
    AlignedTriple(usize, usize, usize),
    #[error("partition is not compatible with the vertex preorder")]
    Incompatible,
    #[error("graph must be connected")]
    Disconnected,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
