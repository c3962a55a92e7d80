use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at s = {0}")]
    Pole(String),
    #[error("q = {0} has no rational square root and the value involves odd powers of s")]
    IrrationalRoot(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("sheet must be 1 or 2, got {0}")]
    BadSheet(i64),
    #[error("strip bounds out of order: lo {lo} > hi {hi}")]
    Inverted { lo: String, hi: String },
    #[error("row at level {level} has support unbounded on the wrong side")]
    WrongSide { level: i64 },
    #[error("strip has no terms")]
    EmptyStrip,
    #[error("strip has duplicate step {0}")]
    DuplicateStep(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("no case of the product table matches {0}")]
    UnreachableCase(String),
    #[error("coefficient sum over an infinite index range while computing {0}")]
    InfiniteSum(String),
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("determinant is not 1")]
    Determinant,
    #[error("modulus {0} is not a supported prime")]
    BadModulus(u64),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("no Bruhat case applies (inconsistent matrix)")]
    Unclassified,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
