//! Error type shared by every solver, checker, and oracle in this crate.

use thiserror::Error;

/// Crate-wide error enum.
///
/// The variants map onto distinct process exit codes in the command-line
/// frontend, so constructors should pick the variant by *cause*:
///
/// * [`Error::MalformedInput`] — the input could not be parsed or is
///   structurally invalid (bad rational literal, overlapping partition
///   blocks, weight vector of the wrong length, ...).
/// * [`Error::Precondition`] — the input parsed fine but violates a
///   mathematical precondition of the requested operation (target set is
///   not a basis, no basis avoids the forbidden region, ...).
/// * [`Error::Capacity`] — an enumeration-based routine refused to run
///   because the instance exceeds its configured size bound.
/// * [`Error::Internal`] — an invariant that the algorithms guarantee
///   failed to hold; indicates a bug, never a user error.
#[derive(Debug, Error)]
pub enum Error {
    /// Input is syntactically or structurally invalid.
    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// Input violates a documented precondition of the operation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Instance is too large for an enumeration-bounded routine.
    #[error("instance too large for enumeration: ground set has {actual} elements, bound is {limit}")]
    Capacity { limit: usize, actual: usize },

    /// Internal invariant failure; indicates a bug in this crate.
    #[error("internal error: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Helper for the most common construction pattern.
    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedInput(msg.into())
    }

    /// Helper for the most common construction pattern.
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Helper for the most common construction pattern.
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
