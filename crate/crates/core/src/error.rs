//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Instance or element data that does not describe a valid object.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// Enumeration would exceed the configured element cap.
    #[error("element cap exceeded: instance has {count} elements, cap is {cap}")]
    CapExceeded { count: u128, cap: usize },

    /// A stated precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two values built over different algebra instances were combined.
    #[error("mismatched algebra instances")]
    InstanceMismatch,

    /// Too many distinct principal ideals for exhaustive ideal enumeration.
    #[error("too many principal ideals: {count} exceeds the bound {max}")]
    TooManyPrincipalIdeals { count: usize, max: usize },

    /// An exhaustive check found a counterexample. Carries a human-readable
    /// description including the offending element indices.
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
