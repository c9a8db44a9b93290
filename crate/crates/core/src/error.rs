use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A family or operation parameter lies outside its admissible domain.
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("invalid interval: lower bound {lo} is not below upper bound {hi}")]
    InvalidInterval { lo: String, hi: String },

    /// A warped-product quantity was evaluated where the profile vanishes.
    #[error("singular evaluation: {0}")]
    Singularity(String),

    /// Doubling the panel count moved the integral by more than the tolerance.
    #[error(
        "quadrature self-check failed: {panels} panels gave {coarse:e}, {refined_panels} gave {refined:e} (tolerance {tolerance:e})"
    )]
    Quadrature {
        panels: usize,
        refined_panels: usize,
        coarse: f64,
        refined: f64,
        tolerance: f64,
    },

    /// ODE integration stopped before the end of the requested range.
    #[error("integration failed at t = {t}: {reason} (last state {last:?})")]
    Integration {
        t: f64,
        last: Vec<f64>,
        reason: String,
    },

    #[error("cannot parse {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
