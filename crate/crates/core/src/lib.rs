//! Conformal biharmonic hypersurfaces in space forms: closed-form residuals,
//! certified classification, Jacobi-operator stability, and numerical checks
//! of the conformal invariance of the conformal bienergy in dimension four.

pub mod arith;
pub mod classify;
pub mod conformal;
pub mod error;
pub mod models;
pub mod poly;
pub mod stability;

pub use arith::{ArithmeticMode, Rational, Scalar, Surd};
pub use error::{Error, Result};
pub use models::{
    cmc_residual, geometric_data, geometric_data_f64, normalized_cmc_residual, radius_validity,
    residual, residual_f64, GeometricData, HypersurfaceFamily, ResidualReport,
};
