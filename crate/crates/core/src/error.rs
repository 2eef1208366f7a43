use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text input. `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} = {value} exceeds the configured cap of {cap}")]
    ResourceCap {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("no universal word over {n} symbols has length <= {budget}")]
    BudgetExhausted { n: usize, budget: usize },

    #[error("clause {clause} is not satisfied by the assignment")]
    UnsatisfiedClause { clause: usize },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::Invalid(message.into())
    }
}
