use num_bigint::BigInt;
use thiserror::Error;

use crate::forms::Parity;

/// Errors raised by the form, classification and obstruction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not symmetric: entry ({row}, {col}) differs from ({col}, {row})")]
    NotSymmetric { row: usize, col: usize },

    #[error("form is not unimodular (determinant {det})")]
    NotUnimodular { det: BigInt },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("form has the wrong parity: expected {expected}")]
    WrongParity { expected: Parity },

    #[error("form has nonzero signature {signature}")]
    NonzeroSignature { signature: i64 },

    #[error("form has odd rank {rank}")]
    OddRank { rank: usize },

    #[error("no vector of the requested norm within coefficient bound {cap}")]
    SearchBoundExceeded { cap: u32 },

    #[error("Arf-type invariant is nonzero, no Lagrangian lies in ker g")]
    InvariantNonzero,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
