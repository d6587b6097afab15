use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{e} edges do not fit on {n} vertices (capacity {capacity})")]
    TooManyEdges { n: usize, e: u64, capacity: u64 },

    #[error("graph has no vertices")]
    EmptyVertexSet,

    #[error("{what} requires n <= {max}, got n = {n}")]
    SizeCap { what: &'static str, n: usize, max: usize },

    #[error("density {0} outside [0, 1]")]
    DensityOutOfRange(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid step function: {0}")]
    InvalidStepFunction(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("bisection bracket [{lo}, {hi}] does not straddle a sign change")]
    Bracket { lo: f64, hi: f64 },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
