use thiserror::Error;

use crate::rootdata::SystemKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("unknown generator `{0}` for the active root system")]
    UnknownGenerator(String),

    #[error("unknown parameter `{0}` (supply it in the substitution map)")]
    UnknownParameter(String),

    #[error("root system mismatch: {0:?} vs {1:?}")]
    SystemMismatch(SystemKind, SystemKind),

    #[error("word {0} is not reduced")]
    NotReduced(String),

    #[error("exponent vectors have different lengths ({0} vs {1})")]
    IndexMismatch(usize, usize),

    #[error("straightening is not confluent for {0}")]
    NonConfluent(String),

    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("character undefined on left leg {0}")]
    CharacterUndefined(String),

    #[error("{0} is not a maximal E-degree of the element")]
    NotMaximal(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("iteration bound {0} exceeded")]
    IterationBound(usize),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid data: {0}")]
    Data(String),
}
