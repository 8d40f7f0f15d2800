//! Multi-threaded drivers, output formats and the `accessperc` command line
//! for the algorithms in [`accessperc_core`].
//!
//! * [`parallel`]: deterministic parallel Monte Carlo estimation, sweeps and
//!   split enumeration.
//! * [`format`]: CSV / JSON tables with round-trip float formatting.
//! * [`dump`]: binary landscape files.
//! * [`commands`]: the table produced by each command.
//! * [`cli`]: argument parsing and dispatch.

pub mod cli;
pub mod commands;
pub mod dump;
pub mod format;
pub mod parallel;

pub use accessperc_core as core;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] accessperc_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("malformed landscape file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl AppError {
    /// Process exit status: 2 for bad input, 3 for a size cap, 4 for an
    /// exhausted search budget, 1 for I/O and file-format failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Core(accessperc_core::Error::BudgetExceeded { .. }) => 4,
            AppError::Core(e) if e.is_resource_cap() => 3,
            AppError::Core(_) | AppError::Usage(_) => 2,
            AppError::Format(_) | AppError::Io(_) | AppError::Csv(_) | AppError::Json(_) => 1,
        }
    }
}
