use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    #[error("instance is infeasible: cheapest selection costs {min_cost}, budget is {budget}")]
    Infeasible { min_cost: f64, budget: f64 },

    #[error("reference point or weights do not satisfy the Chebyshev preconditions: {0}")]
    InvalidReferencePoint(String),

    #[error("oracle guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("{what} did not settle within {limit} iterations")]
    IterationLimit { what: &'static str, limit: usize },

    #[error("value cannot be written as a finite decimal: {0}")]
    NotDecimal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
