use thiserror::Error;

/// Errors raised by the solvers and the audit machinery.
///
/// Degeneracy variants name the quantity that fell inside its zero-band so
/// that callers can route to a fallback and record why.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("simultaneous iteration did not converge after {iterations} iterations (last update {last_update:e})")]
    NonConvergence { iterations: usize, last_update: f64, trace: Vec<f64> },

    #[error("denominator {quantity} inside zero-band (|value| = {magnitude:e}, band = {band:e})")]
    DegenerateDenominator { quantity: &'static str, magnitude: f64, band: f64 },

    #[error("degenerate input: {quantity} inside zero-band (|value| = {magnitude:e}, band = {band:e})")]
    DegenerateInput { quantity: &'static str, magnitude: f64, band: f64 },

    #[error("degenerate matrix: divisor {quantity} inside zero-band (|value| = {magnitude:e}, band = {band:e})")]
    DegenerateMatrix { quantity: &'static str, magnitude: f64, band: f64 },

    #[error("o-quadratic has vanishing leading and linear coefficients")]
    DegenerateQuadratic,

    #[error("double-root criterion fired for more than one pair without a triple root (magnitudes {magnitudes:?})")]
    AmbiguousCriterion { magnitudes: [f64; 3] },
}

impl Error {
    /// Name of the offending quantity for degeneracy errors.
    pub fn degenerate_quantity(&self) -> Option<&'static str> {
        match self {
            Error::DegenerateDenominator { quantity, .. }
            | Error::DegenerateInput { quantity, .. }
            | Error::DegenerateMatrix { quantity, .. } => Some(quantity),
            Error::DegenerateQuadratic => Some("o-quadratic"),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
