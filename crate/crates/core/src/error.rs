use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("graph has no vertices")]
    Empty,
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("self-loop at {0}")]
    SelfLoop(String),
    #[error("parallel edges between {0} and {1}")]
    ParallelEdge(String, String),
    #[error("rotation mismatch: {0}")]
    RotationMismatch(String),
    #[error("cyclic: the digraph contains a directed cycle")]
    Cyclic,
    #[error("multi-source: {0}")]
    MultiSource(String),
    #[error("multi-sink: {0}")]
    MultiSink(String),
    #[error("declared source {0} is not the unique source")]
    WrongSource(String),
    #[error("declared sink {0} is not the unique sink")]
    WrongSink(String),
    #[error("disconnected graph")]
    Disconnected,
    #[error("non-planar rotation: n - m + f = {vertices} - {edges} + {faces} != 2")]
    NonPlanarRotation {
        vertices: i64,
        edges: i64,
        faces: i64,
    },
    #[error("source and sink do not share a face")]
    SourceSinkNotOnOuterFace,
    #[error("non-consecutive in/out edges around {0}")]
    NonConsecutiveInOut(String),
    #[error("graph with {0} vertices is too small")]
    TooSmall(usize),
    #[error("not outerplanar: {0}")]
    NotOuterplanar(String),
    #[error("non-triangular interior face {0}")]
    NonTriangularFace(String),
    #[error("boundary chain is not directed at {0} - {1}")]
    ChainNotDirected(String, String),
    #[error("unknown edge {0}->{1}")]
    UnknownEdge(String, String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("{0} is not a median edge")]
    NotMedian(String),
    #[error("inconsistent decomposition at element {0}: {1}")]
    InconsistentDecomposition(usize, String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("too many polygons for exhaustive search: {0} > {1}")]
    TooManyPolygons(usize, usize),
    #[error("graph too large for exhaustive search: {0} > {1} vertices")]
    TooManyVertices(usize, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("invalid book embedding: {0}")]
    Invalid(String),
    #[error("solution rejected: {0}")]
    BadSolution(String),
}
