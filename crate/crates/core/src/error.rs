use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {dim} outside supported range 1..={max}")]
    DimensionOutOfRange { dim: u32, max: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: u32, found: u32 },
    #[error("direction label {label} outside 1..={dim}")]
    LabelOutOfRange { label: u32, dim: u32 },
    #[error("bits {bits:#x} exceed dimension {dim}")]
    BitsOutOfRange { bits: u64, dim: u32 },
    #[error("hamming distance {hamming} outside 0..={dim}")]
    HammingOutOfRange { hamming: u32, dim: u32 },
    #[error("hamming distance must be at least 1")]
    ZeroHamming,
    #[error("path does not end at the endpoint with hamming distance {hamming}")]
    InvalidEndpoint { hamming: u32 },
    #[error("cannot parse path code: {0}")]
    PathSyntax(&'static str),
    #[error("start fitness {0} outside [0, 1]")]
    StartFitnessOutOfRange(f64),
    #[error("fittest site at the start requires start fitness 1")]
    ContradictoryPlacement,
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("alpha {0} outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

impl Error {
    /// True for failures caused by a size or memory cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::DimensionOutOfRange { .. })
    }
}
