use std::io;
use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A parity-check matrix could not be built from the requested profile.
    #[error("construction failed: {0}")]
    Construction(String),

    /// Malformed text input (alist, config, CSV).
    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    /// The syndrome estimator could not produce an estimate.
    #[error("estimation failed: {0}")]
    Estimation(EstimationError),

    /// A replayed QBER trace ran out of rows.
    #[error("trace exhausted at block {0}")]
    EndOfTrace(usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum EstimationError {
    #[error("no informative syndrome bits")]
    NoInformativeRows,
    /// A row with no key bits has a nonzero relative syndrome bit, which cannot
    /// happen when both parties used the same layout.
    #[error("impossible syndrome bit at row {0} (layout mismatch between parties?)")]
    ImpossibleEvent(usize),
    #[error("log-posterior is not finite anywhere on the search interval")]
    DegeneratePosterior,
}

impl From<EstimationError> for Error {
    fn from(e: EstimationError) -> Self {
        Error::Estimation(e)
    }
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn parse(
        source_name: impl Into<String>,
        line: usize,
        message: impl Into<String>,
    ) -> Self {
        Error::Parse {
            source_name: source_name.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
