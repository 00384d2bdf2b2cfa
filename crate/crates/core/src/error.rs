use thiserror::Error;

use crate::ordinal::Ordinal;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parse error at position {position}: expected one of {}", expected.join(", "))]
    Parse { position: usize, expected: Vec<String> },
    #[error("invalid notation: {0}")]
    InvalidNotation(String),
    /// The value exists but lies at or above epsilon_0. `lower_bound` is the
    /// largest exact value reached before leaving the notation fragment.
    #[error("out of notation: {reason}")]
    OutOfNotation { reason: String, lower_bound: Option<Ordinal> },
    #[error("unsupported limit: {0}")]
    UnsupportedLimit(String),
    #[error("unsupported separation: {0}")]
    UnsupportedSeparation(String),
    #[error("unsupported classification: {0}")]
    UnsupportedClassification(String),
    #[error("unsupported order type: {0}")]
    UnsupportedOtp(String),
    #[error("unsupported decomposition: {0}")]
    UnsupportedDecomposition(String),
    #[error("expected a dilator of type Omega: {0}")]
    NotTypeOmega(String),
    #[error("expected a connected dilator other than 1: {0}")]
    NotConnected(String),
    #[error("no unique important index for {0}")]
    NoUniqueIndex(String),
    #[error("malformed element: {0}")]
    MalformedElement(String),
    #[error("malformed term: {0}")]
    MalformedTerm(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("enumeration shortfall: wanted {wanted}, found {found}")]
    EnumerationShortfall { wanted: usize, found: usize },
    #[error("guard violation: {0}")]
    GuardViolation(String),
    #[error("recursion depth exceeded after {0} steps")]
    DepthExceeded(usize),
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Process exit code for this error: 2 for fragment limits, 3 for input
    /// problems, 1 for everything that indicates a failed check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Usage(_) | Error::InvalidNotation(_) => 3,
            Error::OutOfNotation { .. }
            | Error::UnsupportedLimit(_)
            | Error::UnsupportedSeparation(_)
            | Error::UnsupportedClassification(_)
            | Error::UnsupportedOtp(_)
            | Error::UnsupportedDecomposition(_) => 2,
            _ => 1,
        }
    }

    /// Short machine-readable name used in JSON reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::InvalidNotation(_) => "InvalidNotation",
            Error::OutOfNotation { .. } => "OutOfNotation",
            Error::UnsupportedLimit(_) => "UnsupportedLimit",
            Error::UnsupportedSeparation(_) => "UnsupportedSeparation",
            Error::UnsupportedClassification(_) => "UnsupportedClassification",
            Error::UnsupportedOtp(_) => "UnsupportedOtp",
            Error::UnsupportedDecomposition(_) => "UnsupportedDecomposition",
            Error::NotTypeOmega(_) => "NotTypeOmega",
            Error::NotConnected(_) => "NotConnected",
            Error::NoUniqueIndex(_) => "NoUniqueIndex",
            Error::MalformedElement(_) => "MalformedElement",
            Error::MalformedTerm(_) => "MalformedTerm",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::EnumerationShortfall { .. } => "EnumerationShortfall",
            Error::GuardViolation(_) => "GuardViolation",
            Error::DepthExceeded(_) => "DepthExceeded",
            Error::Usage(_) => "UsageError",
        }
    }
}
