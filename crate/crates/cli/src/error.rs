use std::path::PathBuf;

use magbb::MagbbError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("{0}")]
    Model(MagbbError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    /// A file was read but its contents are malformed.
    #[error("{path}: {detail}")]
    Parse { path: PathBuf, detail: String },
}

impl From<MagbbError> for CliError {
    fn from(e: MagbbError) -> Self {
        match e {
            MagbbError::Solver { .. } => CliError::Model(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Model(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}
