use alloc::string::String;

/// Errors raised by constructors and operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed token `{token}`: {reason}")]
    Malformed { token: String, reason: &'static str },
    #[error("value {0} occurs more than once")]
    RepeatedValue(u8),
    #[error("value {value} is outside 1..={n}")]
    ValueOutOfRange { value: u8, n: usize },
    #[error("expected exactly one mark, found {0}")]
    MarkCount(usize),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("size {0} is not supported here")]
    UnsupportedSize(usize),
    #[error("cell ({row},{col}) holds {token}, which violates forced entry")]
    ForcedEntry { row: usize, col: usize, token: String },
    #[error("invalid matching: {0}")]
    InvalidMatching(&'static str),
    #[error("invalid position set: {0}")]
    InvalidPositionSet(&'static str),
    #[error("invalid spanning tree: {0}")]
    InvalidTree(&'static str),
    #[error("invalid system of permutations: {0}")]
    InvalidSystem(String),
    #[error("fixed cells cannot be combined with symmetry reduction")]
    FixedWithSymmetry,
}

pub type Result<T> = core::result::Result<T, Error>;
