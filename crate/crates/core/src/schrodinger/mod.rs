//! Discretized Schrödinger operators `-Δ + V` on a Dirichlet box, a small
//! family of Kato-class potentials, Green-kernel convolutions, and the
//! explicit moment bounds these produce, with a Lieb-Thirring-type baseline
//! for comparison.
//!
//! The continuum objects are proxied at desk scale: second-order central
//! differences on `[-L, L]^d` (d = 1, 2, 3), midpoint-rule grid norms for the
//! potential, and radial quadrature for the convolutions
//! `β(c) = ‖(c-Δ)^{-1} V_-‖_∞` (the sup sits at the center for radially
//! decreasing wells). Everything negative-spectrum flows through
//! `B = -Δ + V_-`, which dominates the moments of `-Δ + V` by min-max.

mod bounds;
mod grid;
mod kernels;
mod potential;

pub use bounds::{
    bound_kalpha, bound_lp, bound_report, bound_semigroup, end_to_end_matrix_check,
    lieb_thirring_rhs, mu_scaling_scan, BoundReport, BridgeReport, BridgeRow, LtConstant, MuScan,
    MuScanRow, NormKind, ReportEntry, ReportRow, SchrodingerBound, SchrodingerTheorem,
};
pub use grid::{laplacian_matrix, GridSpec};
pub use kernels::{
    beta_of_c, cdp_constant, green_kernel, kalpha_from_powerlaw, kalpha_norm, KalphaResult,
    PowerLawKalpha, QuadSpec,
};
pub use potential::{discretize, lp_norm, sup_norm, DiscretizedPotential, Potential, PotentialShape};

use thiserror::Error;

use crate::jensen::JensenError;
use crate::matrix::{MatrixError, SymmetricOperator};
use crate::specfun::SpecFunError;

#[derive(Debug, Error)]
pub enum SchrodingerError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Jensen(#[from] JensenError),
    #[error("{0}")]
    Domain(String),
    #[error("grid: {0}")]
    Grid(String),
    #[error(
        "no admissible coupling constant with 4β(c) < 1 found up to c = {searched_to:e}; \
         β(c) → 0 as c → ∞ for Kato potentials, so enlarging the scan range must succeed"
    )]
    NoAdmissibleC { searched_to: f64 },
    #[error("the K^α supremum was attained at the boundary of the c-range [{lo:e}, {hi:e}]")]
    BoundarySupremum { lo: f64, hi: f64 },
}

impl SchrodingerError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        SchrodingerError::Domain(msg.into())
    }
}

/// `Σ_{λ ∈ σ⁻(H)} |λ|^γ` of a discretized Hamiltonian; delegates to the
/// spectral oracle.
pub fn negative_spectrum_moment(
    h: &SymmetricOperator,
    gamma: f64,
) -> Result<f64, SchrodingerError> {
    Ok(crate::jensen::negative_moment_oracle(h, gamma)?)
}
