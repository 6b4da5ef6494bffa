use thiserror::Error;

/// Errors produced anywhere in the estimation and simulation pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown wavelet filter `{name}`; supported filters: {supported}")]
    UnknownFilter { name: String, supported: String },

    #[error("signal length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("coarsest level j0 = {j0} is too large for a signal of length {len}")]
    LevelTooLarge { j0: u32, len: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("observation count {0} is too small or odd")]
    BadSampleSize(usize),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("point {0} lies outside the admissible domain")]
    OutOfDomain(f64),

    #[error("no observation falls inside the smoothing window for bandwidth {0}")]
    EmptyWindow(f64),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("replication {rep} failed: {source}")]
    Replication { rep: usize, source: Box<Error> },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
