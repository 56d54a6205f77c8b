use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series division impossible: divisor valuation {divisor} exceeds dividend valuation {dividend}")]
    DivisionImpossible { dividend: usize, divisor: usize },

    #[error("division by the zero series")]
    DivisionByZero,

    #[error("size {requested} exceeds the configured cap of {cap}")]
    SizeCapExceeded { requested: usize, cap: usize },

    #[error("size {requested} is beyond the computed truncation order {order}")]
    TruncationTooSmall { requested: usize, order: usize },

    #[error("invalid partition {0:?}")]
    InvalidPartition(String),

    #[error("unknown tree family {0:?}")]
    UnknownFamily(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("gamma function pole at {0}")]
    Pole(f64),

    #[error("quadrature did not converge after {subdivisions} subdivisions (error estimate {estimate:e})")]
    NonConvergence { subdivisions: usize, estimate: f64 },

    #[error("branch tracking of A(y) failed at y = {re}{im:+}i")]
    BranchTracking { re: f64, im: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
