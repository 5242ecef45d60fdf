use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parts {0:?} are not weakly decreasing")]
    InvalidPartition(Vec<u32>),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("{mu} -> {lambda} is not a single-box cover")]
    NotSingleCover { mu: Partition, lambda: Partition },
    #[error("size mismatch: |{lambda}| must equal |{mu}| + {expected}")]
    SizeMismatch { mu: Partition, lambda: Partition, expected: usize },
    #[error("oracle needs at least {needed} variables, got {got}")]
    TooFewVariables { needed: usize, got: usize },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("function is not harmonic at {0}")]
    NotHarmonic(Partition),
    #[error("function vanishes at reachable vertex {0}")]
    Vanishing(Partition),
    #[error("unsupported format {0:?}")]
    UnsupportedFormat(String),
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("radicands differ")]
    RadicandMismatch,
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
