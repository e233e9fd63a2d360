use thiserror::Error;

/// Errors produced by the kernels, samplers, checks and experiment drivers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{routine} did not converge within {limit} iterations")]
    IterationLimit { routine: &'static str, limit: usize },

    #[error("Markov matrix is reducible: only {communicating} of {n} states communicate with state 0")]
    Reducible { communicating: usize, n: usize },

    #[error("matrix is rank deficient (smallest singular value {smallest:e}, threshold {threshold:e})")]
    RankDeficient { smallest: f64, threshold: f64 },

    #[error("invalid entry law: {0}")]
    InvalidLaw(String),

    #[error("dimension constraint violated: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("replica {replica} at n = {n}: {source}")]
    Replica {
        n: usize,
        replica: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
