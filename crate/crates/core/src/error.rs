use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),
    #[error("weight tuple rows have different sizes: {0:?}")]
    SizeMismatch(Vec<usize>),
    #[error("weight tuple must have at least one row")]
    EmptyTuple,
    #[error("table rows have different lengths")]
    RaggedTable,
    #[error("letters are 1-based; found 0 in row {0}")]
    ZeroLetter(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("table has duplicate columns")]
    DuplicateColumns,
    #[error("dense oracle needs {needed} coordinates, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
