use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("not augmentation-reduced: the empty word has a nonzero coefficient")]
    NotAugmentationReduced,
    #[error("zero input")]
    ZeroInput,
    #[error("partial map: no value for word {0}")]
    PartialMap(String),
    #[error("bracket table does not cover the pair ({0}, {1})")]
    BracketOutOfBound(String, String),
    #[error("not tangent to identity: {0}")]
    NotTangent(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("size bound: {what} of size {size} exceeds the limit {limit}")]
    SizeBound {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("unit topology")]
    UnitTopology,
    #[error("unit component present")]
    UnitComponent,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
