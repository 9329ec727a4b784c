use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported representation: {0}")]
    Unsupported(String),
    #[error("coefficient ({i}, {j}) lies outside truncation order {order}")]
    OutOfTruncation { i: usize, j: usize, order: usize },
    #[error("exponential of a series with nonzero constant term")]
    NonzeroConstantTerm,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable `{0}` is not allowed here")]
    DisallowedVariable(String),
    #[error("unknown identity tag `{0}`")]
    UnknownTag(String),
    #[error("tag {tag} does not accept these parameters: {msg}")]
    Arity { tag: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
