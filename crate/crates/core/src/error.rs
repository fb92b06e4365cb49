use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("enumeration of size {n} exceeds the cap {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("sequence is not finer than the label pattern")]
    CompositionDomain,
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;
