use thiserror::Error;

use crate::ncalgebra::GeneratorId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator {0} is not part of the algebra")]
    GeneratorOutsideAlgebra(GeneratorId),

    #[error("operands belong to different algebras")]
    DescriptorMismatch,

    #[error("generator set is not closed: {first} and {second} require {missing}")]
    ClosureViolation {
        first: GeneratorId,
        second: GeneratorId,
        missing: GeneratorId,
    },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid minor: {0}")]
    InvalidMinor(String),

    #[error("index {index} out of range {min}..={max}")]
    IndexOutOfRange { index: i64, min: i64, max: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkew { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("guard exceeded: {what} needs {requested}, bound is {bound}")]
    GuardExceeded {
        what: &'static str,
        requested: u128,
        bound: u128,
    },
}
