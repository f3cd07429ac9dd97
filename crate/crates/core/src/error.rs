use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A malformed definition: unknown parameter, bad basis, parity mismatch.
    #[error("definition error: {0}")]
    Definition(String),
    /// Operands that do not fit together, e.g. tensors over different bases.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// An intermediate result left the shape the operation requires.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("dimension guard exceeded: {0}")]
    DimensionGuard(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn definition(msg: impl Into<String>) -> Self {
        Error::Definition(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
