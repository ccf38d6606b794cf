//! Dense real-symmetric and complex linear algebra.
//!
//! Everything here is desk-scale: row-major `Vec<f64>` storage, a
//! Householder + implicit-shift QL eigensolver with a tridiagonal fast path,
//! matrix exponentials through the spectral decomposition, complex LU with
//! partial pivoting for log-determinants and resolvents, and Schatten norms
//! via one-sided Jacobi singular values.

mod complex;
mod eigh;
mod schatten;
mod textio;

pub use complex::{complex_log_det, resolvent_scaled, ComplexLu, ComplexMatrix, LogDet};
pub use schatten::{schatten_norm_complex, schatten_norm_sym, singular_values_complex, SchattenKind};
pub use textio::{parse_matrix_text, write_matrix_text, ParsedMatrix, ASYMMETRY_WARN};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("entry buffer has length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("eigensolver failed to converge after {iterations} iterations (dim {dim})")]
    NoConvergence { iterations: usize, dim: usize },
    #[error("time parameter must be positive, got {0}")]
    NonPositiveTime(f64),
    #[error("resolvent requires |z| < 1, got |z| = {0}")]
    ResolventOutsideDisk(f64),
    #[error("matrix text format: {0}")]
    TextFormat(String),
}

/// Dense real symmetric matrix. Symmetry is enforced on construction by
/// averaging `(M + Mᵀ)/2`, so `get(i, j) == get(j, i)` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricOperator {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricOperator {
    /// Build from row-major entries, symmetrizing. Returns the operator and
    /// the largest absolute asymmetry `|m_ij - m_ji|` found in the input.
    pub fn from_raw(dim: usize, entries: Vec<f64>) -> Result<(Self, f64), MatrixError> {
        if dim == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        if entries.len() != dim * dim {
            return Err(MatrixError::BadLength {
                got: entries.len(),
                expected: dim * dim,
            });
        }
        let mut data = entries;
        let mut asym = 0.0_f64;
        for i in 0..dim {
            for j in 0..i {
                let a = data[i * dim + j];
                let b = data[j * dim + i];
                asym = asym.max((a - b).abs());
                let avg = 0.5 * (a + b);
                data[i * dim + j] = avg;
                data[j * dim + i] = avg;
            }
        }
        Ok((Self { dim, data }, asym))
    }

    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self, MatrixError> {
        Self::from_raw(dim, entries).map(|(m, _)| m)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..=i {
                let v = 0.5 * (f(i, j) + f(j, i));
                data[i * dim + j] = v;
                data[j * dim + i] = v;
            }
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let dim = values.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = values[i];
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Add `values[i]` to the diagonal.
    pub fn add_diagonal(&self, values: &[f64]) -> Result<Self, MatrixError> {
        if values.len() != self.dim {
            return Err(MatrixError::BadLength {
                got: values.len(),
                expected: self.dim,
            });
        }
        let mut out = self.clone();
        for i in 0..self.dim {
            out.data[i * self.dim + i] += values[i];
        }
        Ok(out)
    }

    /// Plain dense product (not symmetric in general).
    pub fn mul_dense(&self, other: &Self) -> Result<Vec<f64>, MatrixError> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn is_tridiagonal(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                if j + 1 < i || i + 1 < j {
                    if self.data[i * n + j] != 0.0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Full spectral factorization `M = Q diag(λ) Qᵀ` with ascending
    /// eigenvalues and orthogonal `Q`.
    pub fn eigh(&self) -> Result<SpectralDecomposition, MatrixError> {
        eigh::eigh(self, true).map(|(vals, vecs)| SpectralDecomposition {
            eigenvalues: vals,
            eigenvectors: vecs.expect("vectors requested"),
            dim: self.dim,
        })
    }

    /// Eigenvalues only (ascending); skips accumulating the orthogonal factor.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, MatrixError> {
        eigh::eigh(self, false).map(|(vals, _)| vals)
    }

    /// `e^{-tM}` through the spectral decomposition, `t > 0`.
    pub fn expm_neg(&self, t: f64) -> Result<SymmetricOperator, MatrixError> {
        if !(t > 0.0) {
            return Err(MatrixError::NonPositiveTime(t));
        }
        let dec = self.eigh()?;
        Ok(dec.apply_spectral_fn(|lambda| (-t * lambda).exp()))
    }

    fn check_dim(&self, other: &Self) -> Result<(), MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimMismatch(self.dim, other.dim));
        }
        Ok(())
    }
}

/// Result of [`SymmetricOperator::eigh`]: ascending eigenvalues and the
/// orthogonal eigenvector matrix (columns are eigenvectors, row-major store).
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    dim: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<f64>,
}

impl SpectralDecomposition {
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Entry `(i, j)` of the eigenvector matrix; column `j` is the eigenvector
    /// for `eigenvalues()[j]`.
    #[inline]
    pub fn vector_entry(&self, i: usize, j: usize) -> f64 {
        self.eigenvectors[i * self.dim + j]
    }

    pub fn eigenvectors(&self) -> &[f64] {
        &self.eigenvectors
    }

    /// Assemble `Q f(λ) Qᵀ`, re-symmetrized against round-off.
    pub fn apply_spectral_fn(&self, f: impl Fn(f64) -> f64) -> SymmetricOperator {
        let n = self.dim;
        let fvals: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.eigenvectors[i * n + k] * fvals[k] * self.eigenvectors[j * n + k];
                }
                out[i * n + j] = s;
                out[j * n + i] = s;
            }
        }
        SymmetricOperator { dim: n, data: out }
    }

    /// `Q diag(λ) Qᵀ` (round-trip check helper).
    pub fn reconstruct(&self) -> SymmetricOperator {
        self.apply_spectral_fn(|l| l)
    }

    /// Max entry of `QᵀQ - I`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..=i {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.eigenvectors[k * n + i] * self.eigenvectors[k * n + j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}
