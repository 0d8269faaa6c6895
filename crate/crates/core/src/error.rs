use alloc::string::String;

/// Errors raised by the algorithmic core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("weight {0} is not weakly decreasing")]
    NotDominant(String),
    #[error("partition {parts} has {rows} rows, at most {max} allowed")]
    TooManyRows {
        parts: String,
        rows: usize,
        max: usize,
    },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("grassmannian parameters differ ({0} vs {1})")]
    MixedGrassmannians(usize, usize),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("negative Schur coefficient at {0}")]
    NotSchurPositive(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
