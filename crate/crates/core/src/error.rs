use std::fmt;

use thiserror::Error;

/// Position of a token in parser input, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("homogenization degree {d} is below the polynomial degree {deg}")]
    DegreeTooSmall { d: u32, deg: u32 },
    #[error("zero polynomial not allowed: {0}")]
    ZeroPolynomial(&'static str),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("denominator vanishes identically along the path")]
    PoleAlongPath,
    #[error("map is not gcd-reduced")]
    Unreduced,
    #[error("exact mode supports projective dimension at most 2, got {0}")]
    ExactModeUnsupported(usize),
    #[error("precondition `{name}` violated: {detail}")]
    Precondition { name: &'static str, detail: String },
    #[error("path does not go to infinity (no component has negative order)")]
    PathNotAtInfinity,
    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precondition(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            name,
            detail: detail.into(),
        }
    }
}
