use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bi-objective minimum violated: {0} objective(s), at least 2 required")]
    TooFewObjectives(usize),

    #[error("empty outcome set")]
    EmptySet,

    #[error("dimension mismatch: expected {expected}, found {found}{}", context_suffix(.context))]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("invalid weight vector: {0}")]
    InvalidWeight(String),

    #[error("point {0} is not a member of the non-dominated set")]
    NotInSet(String),

    #[error("enumeration refused: {0}")]
    CapExceeded(String),

    /// A proven equivalence failed on a concrete instance. This is always an
    /// implementation bug; the payload carries a diagnostic dump.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

fn context_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" ({context})")
    }
}

impl Error {
    pub(crate) fn dims(expected: usize, found: usize, context: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            expected,
            found,
            context: context.into(),
        }
    }

    /// Whether the error stems from bad input (as opposed to an internal failure).
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Consistency(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
