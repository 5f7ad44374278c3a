//! Crate-wide error type.

use alloc::boxed::Box;
use alloc::string::String;

/// Errors reported by construction, validation, and budget checks.
///
/// Every fallible operation in this crate returns this type; functions that
/// cannot fail on valid inputs document their preconditions instead.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain size must be at least 1")]
    EmptyDomain,

    #[error("{what}: {value} is out of range (must be < {bound})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: usize, right: usize },

    #[error("alphabet mismatch: {left} letters vs {right} letters")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("letter {letter} is out of range (alphabet has {letter_count} letters)")]
    InvalidLetter { letter: usize, letter_count: usize },

    #[error("arity mismatch: expected {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("unknown modifier or operation name: {0}")]
    UnknownName(String),

    #[error("{what} needs {required} (budget {limit})")]
    Budget {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("{what} overflows the index type")]
    Overflow { what: &'static str },

    #[error("choice {choice}: {source}")]
    ChoiceFailed {
        choice: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = core::result::Result<T, Error>;
