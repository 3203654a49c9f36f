//! Batch solving, benchmarking and identity audits on top of `uniform-cubic`.
//!
//! All IO of the project lives here. Library functions take and return
//! plain values so the binary stays a thin argument parser.

pub mod audit;
pub mod bench;
pub mod error;
pub mod input;
pub mod json;
pub mod record;

pub use audit::{run_audit, AuditConfig, AuditRun};
pub use bench::{run_bench, BenchConfig, BenchReport, Distribution};
pub use error::HarnessError;
pub use input::{parse_input, parse_line, Input};
pub use record::{run_batch, run_check, Method, RecordMethod, SolveRecord};

/// Tolerance used when neither `--tol` nor the environment sets one.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Environment variable overriding [`DEFAULT_TOL`].
pub const TOL_ENV: &str = "UCUBIC_TOL";

/// Accepts tolerances strictly inside `(0, 1)`.
pub fn validate_tol(tol: f64) -> Result<f64, HarnessError> {
    if tol > 0.0 && tol < 1.0 {
        Ok(tol)
    } else {
        Err(HarnessError::InvalidArgument(format!("tolerance {tol} outside (0, 1)")))
    }
}
