use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series contexts differ: {0}")]
    ContextMismatch(String),
    #[error("evaluation point is a pole")]
    Pole,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<i64>),
    #[error("invalid strip diagram: {0}")]
    InvalidStrip(String),
    #[error("size guard exceeded: {0}")]
    BlowUp(String),
    #[error("routes disagree: {0}")]
    RouteMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
