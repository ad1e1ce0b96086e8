use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant to an exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index out of range: [{i}..{j}] in a word of length {len}")]
    Index { i: usize, j: isize, len: usize },

    #[error("input too short: {0}")]
    EmptyInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("guard exceeded: {what} needs {requested}, limit is {limit}")]
    Guard {
        what: &'static str,
        requested: String,
        limit: String,
    },

    #[error("enumeration cap of {cap} exceeded")]
    CapExceeded { cap: u64 },

    #[error("internal construction error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn guard(
        what: &'static str,
        requested: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::Guard {
            what,
            requested: requested.to_string(),
            limit: limit.to_string(),
        }
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Index { .. } => "index",
            Error::EmptyInput(_) => "empty_input",
            Error::Domain(_) => "domain",
            Error::Precondition(_) => "precondition",
            Error::Verification(_) => "verification",
            Error::Guard { .. } => "guard",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Internal(_) => "internal",
        }
    }

    /// True for resource-limit failures (guards and caps).
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. } | Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
