use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("node {node} is out of range for a graph with {len} nodes")]
    UnknownNode { node: usize, len: usize },

    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(usize, usize),

    #[error("weight {0} is not strictly positive")]
    NonPositiveWeight(f64),

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("operation requires an unweighted graph")]
    Weighted,

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("graph has no edges")]
    Edgeless,

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed XML: {0}")]
    Xml(#[from] roxmltree::Error),

    #[error("GraphML declares a directed graph")]
    DirectedGraph,

    #[error("malformed GraphML: {0}")]
    GraphMl(String),

    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },

    #[error("side length {0} is too small; need at least 3")]
    FrameTooSmall(usize),

    #[error("malformed prism: {0}")]
    MalformedPrism(String),

    #[error("sample size {size} is invalid for a graph with {len} nodes")]
    SampleSize { size: usize, len: usize },

    #[error("probability {0} is outside [0, 1]")]
    Probability(f64),

    #[error("width {width} is smaller than the maximum degree {max_degree}")]
    WidthTooSmall { width: usize, max_degree: usize },

    #[error("signature matrices are incompatible: {0}")]
    SignatureMismatch(String),

    #[error("cost matrix is {rows}x{cols}; a square matrix is required")]
    NotSquare { rows: usize, cols: usize },

    #[error("cost matrix entry ({row}, {col}) is {value}")]
    InvalidCost { row: usize, col: usize, value: f64 },

    #[error("graphs have different node counts ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("round {round}: random walk collected {got} of {want} nodes")]
    SamplingExhausted {
        round: usize,
        got: usize,
        want: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
