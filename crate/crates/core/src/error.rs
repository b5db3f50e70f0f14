use thiserror::Error;

use crate::sdpsolve::SdpStatus;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MagbbError {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// The semidefinite program could not be solved to optimality.
    #[error("SDP solver returned {status:?}: {detail}")]
    Solver { status: SdpStatus, detail: String },
}

pub type Result<T> = std::result::Result<T, MagbbError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(MagbbError::Domain(msg.into()))
}
