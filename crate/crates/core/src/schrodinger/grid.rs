use serde::{Deserialize, Serialize};

use super::SchrodingerError;
use crate::matrix::SymmetricOperator;

/// Largest dense operator dimension built by default (a dense `n^d x n^d`
/// matrix at this cap is ~130 MB).
pub const DEFAULT_DENSE_CAP: usize = 4100;

/// Uniform Dirichlet grid on `[-L, L]^d`: `n` interior points per axis with
/// spacing `h = 2L/(n+1)`, node coordinates `-L + (i+1) h`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSpec {
    pub d: usize,
    #[serde(rename = "L")]
    pub half_width: f64,
    pub n: usize,
    #[serde(default = "default_dense_cap")]
    pub dense_cap: usize,
}

fn default_dense_cap() -> usize {
    DEFAULT_DENSE_CAP
}

impl GridSpec {
    pub fn new(d: usize, half_width: f64, n: usize) -> Result<Self, SchrodingerError> {
        let spec = Self {
            d,
            half_width,
            n,
            dense_cap: DEFAULT_DENSE_CAP,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), SchrodingerError> {
        if !(1..=3).contains(&self.d) {
            return Err(SchrodingerError::Grid(format!(
                "dimension must be 1, 2 or 3, got {}",
                self.d
            )));
        }
        if self.n < 8 {
            return Err(SchrodingerError::Grid(format!(
                "need at least 8 points per axis, got {}",
                self.n
            )));
        }
        if !(self.half_width > 0.0) {
            return Err(SchrodingerError::Grid(format!(
                "box half-width must be positive, got {}",
                self.half_width
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.n as f64 + 1.0)
    }

    pub fn total_points(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    /// Coordinate of interior index `i` along one axis.
    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 1.0) * self.spacing()
    }

    /// Decompose a flat index into per-axis indices (row-major, axis 0 slowest).
    pub fn unflatten(&self, flat: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        let mut rest = flat;
        for axis in (0..self.d).rev() {
            idx[axis] = rest % self.n;
            rest /= self.n;
        }
        idx
    }

    /// Node position for a flat index (only the first `d` entries are used).
    pub fn position(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let mut x = [0.0; 3];
        for axis in 0..self.d {
            x[axis] = self.coord(idx[axis]);
        }
        x
    }
}

/// Second-order central-difference `-Δ` with Dirichlet boundary: the Kronecker
/// sum of 1-D `(2, -1)/h²` stencils. Positive semidefinite by construction;
/// the 1-D analytic eigenvalues are `(2/h²)(1 - cos(kπ/(n+1)))`.
pub fn laplacian_matrix(grid: &GridSpec) -> Result<SymmetricOperator, SchrodingerError> {
    grid.validate()?;
    let total = grid.total_points();
    if total > grid.dense_cap {
        return Err(SchrodingerError::Grid(format!(
            "grid has {total} points but the dense-operator cap is {}; lower n or raise dense_cap",
            grid.dense_cap
        )));
    }
    let n = grid.n;
    let d = grid.d;
    let inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    let mut data = vec![0.0; total * total];
    for flat in 0..total {
        let idx = grid.unflatten(flat);
        data[flat * total + flat] = 2.0 * d as f64 * inv_h2;
        // neighbor couplings along each axis
        let mut stride = 1usize;
        for axis in (0..d).rev() {
            if idx[axis] + 1 < n {
                let other = flat + stride;
                data[flat * total + other] = -inv_h2;
                data[other * total + flat] = -inv_h2;
            }
            stride *= n;
        }
    }
    Ok(SymmetricOperator::new(total, data)?)
}
