use thiserror::Error;

use crate::tensor::TruncationCtx;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("words of mixed lengths in a basis request (expected {expected}, found {found})")]
    MixedLengths { expected: usize, found: usize },

    #[error("truncation contexts differ: {left} vs {right}")]
    ContextMismatch {
        left: TruncationCtx,
        right: TruncationCtx,
    },

    #[error("expected a homogeneous element of degree {expected}, found a word of degree {found}")]
    NotHomogeneous { expected: usize, found: usize },

    #[error("left division is undefined on the degree-0 part")]
    DegreeZeroDivision,

    #[error("word of length {word} paired with an element of degree {degree}")]
    LengthMismatch { word: usize, degree: usize },

    #[error("support {letter} lies outside the alphabet 0..={bound}")]
    OutsideAlphabet { letter: usize, bound: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix does not have the expected triangular structure: {0}")]
    Structure(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
