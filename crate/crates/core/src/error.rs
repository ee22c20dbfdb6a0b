use thiserror::Error;

/// Errors raised by the verification toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation would exceed its configured size budget.
    #[error("resource limit: {what} needs {required} but the budget is {budget}")]
    Resource {
        what: &'static str,
        required: u128,
        budget: u128,
    },
    /// Malformed textual input (set files, masks, rationals).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
