use thiserror::Error;

use crate::exact::IVector;

/// Failure modes shared by every module of the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("division did not terminate within {steps} steps ({trace})")]
    DivisionDiverged { steps: u64, trace: String },

    #[error("witness failed: {0}")]
    WitnessFailed(String),

    #[error("initial reduction did not terminate within {steps} steps; declare a prime or raise the step cap")]
    InredDiverged { steps: u64 },

    #[error("regime error: {0}")]
    RegimeError(String),

    #[error("weight is not generic, violated equations: {}", format_rows(.equations))]
    NonGenericWeight { equations: Vec<IVector> },
}

fn format_rows(rows: &[IVector]) -> String {
    rows.iter()
        .map(|r| {
            let parts: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub type Result<T> = std::result::Result<T, Error>;
