use thiserror::Error;

/// Errors raised by the solver toolkit.
///
/// Message and vertex numbers carried in variants are 1-based, matching the
/// text formats, so they can be shown to users unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: index {index} out of range 1..={max}")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        max: usize,
    },

    #[error("line {line}: duplicate receiver id {id}")]
    DuplicateReceiver { line: usize, id: usize },

    #[error("receiver {id}: message x{message} is both wanted and known")]
    WantKnowOverlap { id: usize, message: usize },

    #[error("not single-unicast: message x{message} has {demanders} demanders")]
    NotSingleUnicast { message: usize, demanders: usize },

    #[error("invalid structure: {0}")]
    Structure(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{what} is {size}, over the limit of {limit}; {hint}")]
    Resource {
        what: &'static str,
        size: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
