use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes shared by every module.
///
/// The split between validation-like variants (`Domain`, `Schema`,
/// `Precondition`, `Validation`) and numeric ones (`Numeric`,
/// `UnsupportedRegime`) is what the command line maps to exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    Domain(String),
    /// Argument inside the domain but outside what the implementation evaluates.
    UnsupportedRegime(String),
    /// Iteration failed to converge or a factorization broke down.
    Numeric(String),
    /// Caller violated a size or ordering precondition.
    Precondition(String),
    /// A measure or interval document failed validation.
    Schema { field: String, message: String },
    /// Polynomial failed the admissibility conditions.
    Validation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { field: field.into(), message: message.into() }
    }

    /// True for failures caused by the inputs rather than by the numerics.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Precondition(_) | Error::Schema { .. } | Error::Validation(_))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::UnsupportedRegime(m) => write!(f, "unsupported regime: {m}"),
            Error::Numeric(m) => write!(f, "numeric failure: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::Schema { field, message } => write!(f, "invalid `{field}`: {message}"),
            Error::Validation(m) => write!(f, "validation failed: {m}"),
        }
    }
}

impl core::error::Error for Error {}
