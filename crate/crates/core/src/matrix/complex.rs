use num_complex::Complex64;

use super::{MatrixError, SymmetricOperator};

/// Dense complex matrix, row-major.
#[derive(Debug, Clone)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self, MatrixError> {
        if dim == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(MatrixError::BadLength {
                got: data.len(),
                expected: dim * dim,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::ONE;
        }
        m
    }

    pub fn from_real(m: &SymmetricOperator) -> Self {
        let dim = m.dim();
        let data = m.data().iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    #[inline]
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    /// `I - self`, in place shape.
    pub fn one_minus(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = -*v;
        }
        for i in 0..n {
            out.data[i * n + i] += Complex64::ONE;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn lu(&self) -> ComplexLu {
        ComplexLu::factor(self)
    }
}

/// LU factorization with partial pivoting. Exactly singular inputs are not an
/// error: they are flagged and produce a `-inf` log-determinant, which callers
/// near determinant zeros rely on.
#[derive(Debug, Clone)]
pub struct ComplexLu {
    dim: usize,
    lu: Vec<Complex64>,
    pivots: Vec<usize>,
    swaps: usize,
    singular: bool,
}

impl ComplexLu {
    fn factor(m: &ComplexMatrix) -> Self {
        let n = m.dim;
        let mut lu = m.data.clone();
        let mut pivots = vec![0usize; n];
        let mut swaps = 0usize;
        let mut singular = false;

        for col in 0..n {
            let mut best = col;
            let mut best_mag = lu[col * n + col].norm_sqr();
            for row in (col + 1)..n {
                let mag = lu[row * n + col].norm_sqr();
                if mag > best_mag {
                    best_mag = mag;
                    best = row;
                }
            }
            pivots[col] = best;
            if best != col {
                for j in 0..n {
                    lu.swap(col * n + j, best * n + j);
                }
                swaps += 1;
            }
            let pivot = lu[col * n + col];
            if pivot == Complex64::ZERO {
                singular = true;
                continue;
            }
            for row in (col + 1)..n {
                let factor = lu[row * n + col] / pivot;
                lu[row * n + col] = factor;
                if factor != Complex64::ZERO {
                    for j in (col + 1)..n {
                        let sub = factor * lu[col * n + j];
                        lu[row * n + j] -= sub;
                    }
                }
            }
        }

        Self {
            dim: n,
            lu,
            pivots,
            swaps,
            singular,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Log-determinant as `(log|det|, accumulated argument)`. The argument sums
    /// pivot arguments plus `π` per row swap; it is not reduced mod `2π`.
    pub fn log_det(&self) -> LogDet {
        if self.singular {
            return LogDet {
                log_abs: f64::NEG_INFINITY,
                arg: 0.0,
                singular: true,
            };
        }
        let n = self.dim;
        let mut log_abs = 0.0;
        let mut arg = if self.swaps % 2 == 1 {
            std::f64::consts::PI
        } else {
            0.0
        };
        for i in 0..n {
            let p = self.lu[i * n + i];
            log_abs += p.norm().ln();
            arg += p.arg();
        }
        LogDet {
            log_abs,
            arg,
            singular: false,
        }
    }

    /// Solve `self * X = B` for all columns of `B` in place.
    ///
    /// The factorization swaps entire working rows, so the stored factors
    /// satisfy `P A = L U` with `L` already in final row order: the whole
    /// permutation is applied to `B` up front, then the two clean triangular
    /// sweeps.
    pub fn solve_in_place(&self, b: &mut ComplexMatrix) -> Result<(), MatrixError> {
        if self.dim != b.dim {
            return Err(MatrixError::DimMismatch(self.dim, b.dim));
        }
        let n = self.dim;
        for col in 0..n {
            let piv = self.pivots[col];
            if piv != col {
                for j in 0..n {
                    b.data.swap(col * n + j, piv * n + j);
                }
            }
        }
        for col in 0..n {
            for row in (col + 1)..n {
                let factor = self.lu[row * n + col];
                if factor != Complex64::ZERO {
                    for j in 0..n {
                        let sub = factor * b.data[col * n + j];
                        b.data[row * n + j] -= sub;
                    }
                }
            }
        }
        for col in (0..n).rev() {
            let inv_pivot = Complex64::ONE / self.lu[col * n + col];
            for j in 0..n {
                b.data[col * n + j] *= inv_pivot;
            }
            for row in 0..col {
                let factor = self.lu[row * n + col];
                if factor != Complex64::ZERO {
                    for j in 0..n {
                        let sub = factor * b.data[col * n + j];
                        b.data[row * n + j] -= sub;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Result<ComplexMatrix, MatrixError> {
        let mut id = ComplexMatrix::identity(self.dim);
        self.solve_in_place(&mut id)?;
        Ok(id)
    }
}

/// `(log|det|, arg)` pair; `singular` marks an exact zero determinant.
#[derive(Debug, Clone, Copy)]
pub struct LogDet {
    pub log_abs: f64,
    pub arg: f64,
    pub singular: bool,
}

/// Log-determinant through LU pivot magnitudes. `|det|` spans many orders of
/// magnitude near determinant zeros, so the logs are accumulated directly.
pub fn complex_log_det(m: &ComplexMatrix) -> LogDet {
    m.lu().log_det()
}

/// `(I - z e^{-A})^{-1}` for `|z| < 1` and `exp_a = e^{-A}` with
/// `σ(A) ⊂ [0,∞)`, so the Neumann series converges and the inverse exists.
pub fn resolvent_scaled(exp_a: &SymmetricOperator, z: Complex64) -> Result<ComplexMatrix, MatrixError> {
    if z.norm() >= 1.0 {
        return Err(MatrixError::ResolventOutsideDisk(z.norm()));
    }
    let m = ComplexMatrix::from_real(exp_a).scale(z).one_minus();
    let lu = m.lu();
    lu.inverse()
}
