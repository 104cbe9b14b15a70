use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop ({0}, {0}) rejected in simple graph")]
    LoopRejected(usize),

    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),

    #[error("rejection cap of {0} attempts exceeded")]
    RejectionCapExceeded(u64),

    #[error("degree sequence has odd sum")]
    OddDegreeSum,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("matrix dimension {dim} exceeds exact-method cap {cap}")]
    ExactSizeExceeded { dim: usize, cap: usize },

    #[error("cycle is not a special cycle of the given graph")]
    NotASpecialCycle,

    #[error("c = {0} is too close to the critical point e")]
    CriticalPoint(f64),

    #[error("argument {0} out of range: {1}")]
    OutOfRange(f64, &'static str),

    #[error("fixed points of the peeling map did not separate at c = {0}")]
    NoSeparation(f64),

    #[error("lambda must be positive, got {0}")]
    NonPositiveLambda(f64),

    #[error("empty input")]
    EmptyInput,

    #[error("malformed edge list: {0}")]
    ParseError(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::ParseError(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
