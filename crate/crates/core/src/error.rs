use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// The variants map one-to-one onto the CLI exit codes (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied value violates an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A real-valued formula is undefined at the requested point
    /// (for example an iterated logarithm of a value that is not positive).
    #[error("domain error: {0}")]
    Domain(String),
    /// The request does not fit in the configured memory budget.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A search or factoring loop gave up after exhausting its budget.
    #[error("budget exceeded during {stage}: {detail}")]
    Budget { stage: String, detail: String },
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn budget(stage: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Budget {
            stage: stage.into(),
            detail: detail.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Argument(_) => 2,
            Error::Domain(_) => 3,
            Error::Resource(_) => 4,
            Error::Budget { .. } => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
