use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// The configuration is malformed or inconsistent; `path` locates the
    /// offending field (`P[2]`, `sigma2`, `z0`, ...).
    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
    /// The model itself was rejected, e.g. a reducible network.
    #[error("validation error: {0}")]
    Validation(#[from] crowdwise_core::Error),
    #[error("not converged: {0}")]
    NotConverged(String),
    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status: 1 I/O, 2 config, 3 validation, 4 not converged.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Io { .. } => 1,
            Self::Config { .. } => 2,
            Self::Validation(_) => 3,
            Self::NotConverged(_) => 4,
        }
    }
}
