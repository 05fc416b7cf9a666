use thiserror::Error;

/// Errors raised by constructors and checked operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("cannot parse {input:?} as a rational: {reason}")]
    ParseRational { input: String, reason: String },
    #[error("degenerate measure: {0}")]
    DegenerateMeasure(String),
    #[error("invalid family record: {0}")]
    Record(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
