use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested register does not fit the configured memory budget.
    #[error("capacity exceeded: {n_qubits} qubits requested, limit is {max_qubits}")]
    Capacity { n_qubits: usize, max_qubits: usize },

    /// A quantity that must be real carried a non-negligible imaginary part.
    #[error("numerical consistency: expectation has imaginary part {imag:e}")]
    NumericalConsistency { imag: f64 },

    /// Invalid configuration (unknown keys, out-of-range values, ...).
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
