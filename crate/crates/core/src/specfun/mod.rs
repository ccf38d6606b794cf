//! Special functions and adaptive one-dimensional quadrature.
//!
//! Only what the bounds need: Γ and ζ for the closed-form constants, the
//! Lambert W principal branch for the sharpness lower bound, modified Bessel
//! K for the Green kernel of `(1-Δ)^{-1}`, and Gauss-Kronrod panels with
//! exponential endpoint substitutions for the singular integrals.

mod bessel;
mod elliptic;
mod gamma;
mod lambert;
mod quad;

pub use bessel::bessel_k;
pub use elliptic::carlson_rf;
pub use gamma::{gamma_fn, ln_gamma, riemann_zeta};
pub use lambert::lambert_w0;
pub use quad::{adaptive_quad, adaptive_quad_opts, QuadOptions, QuadResult, SingularEndpoints};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecFunError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not reach tolerance: best {value:e} ± {error:e} after {panels} panels")]
    QuadBudget {
        value: f64,
        error: f64,
        panels: usize,
    },
}

impl SpecFunError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        SpecFunError::Domain(msg.into())
    }
}
