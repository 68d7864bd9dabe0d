use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: usize,
        message: String,
    },
    #[error("no usable data left after cleaning {0}")]
    EmptyAfterCleaning(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for configuration errors, 3 for data and file errors, 4 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_)
            | CliError::Parse { .. }
            | CliError::EmptyAfterCleaning(_)
            | CliError::Io { .. } => 3,
            CliError::Numerical(_) => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl From<chebstep::Error> for CliError {
    fn from(e: chebstep::Error) -> Self {
        use chebstep::Error as E;
        let msg = e.to_string();
        match e {
            E::InvalidParams(_)
            | E::SizeLimitExceeded { .. }
            | E::ScheduleEmpty
            | E::DimensionMismatch { .. }
            | E::ShapeMismatch(_) => CliError::Config(msg),
            E::Parse { .. } | E::Io(_) | E::NotSymmetric { .. } => CliError::Data(msg),
            _ => CliError::Numerical(msg),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
