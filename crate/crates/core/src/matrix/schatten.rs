use num_complex::Complex64;

use super::{ComplexMatrix, MatrixError, SymmetricOperator};

/// The three Schatten norms used by the bounds: trace (sum of singular
/// values), Hilbert-Schmidt (Frobenius) and operator (largest singular value).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchattenKind {
    Trace,
    HilbertSchmidt,
    Operator,
}

/// Schatten norm of a real symmetric matrix. Singular values of a symmetric
/// matrix are the absolute eigenvalues, so the trace and operator norms go
/// through the eigensolver; Hilbert-Schmidt is read off the entries.
pub fn schatten_norm_sym(m: &SymmetricOperator, kind: SchattenKind) -> Result<f64, MatrixError> {
    match kind {
        SchattenKind::HilbertSchmidt => Ok(m.frobenius_norm()),
        SchattenKind::Trace => {
            let vals = m.eigenvalues()?;
            Ok(vals.iter().map(|l| l.abs()).sum())
        }
        SchattenKind::Operator => {
            let vals = m.eigenvalues()?;
            Ok(vals.iter().fold(0.0_f64, |acc, l| acc.max(l.abs())))
        }
    }
}

/// Schatten norm of a general complex matrix.
pub fn schatten_norm_complex(m: &ComplexMatrix, kind: SchattenKind) -> f64 {
    match kind {
        SchattenKind::HilbertSchmidt => m.frobenius_norm(),
        SchattenKind::Trace => singular_values_complex(m).iter().sum(),
        SchattenKind::Operator => singular_values_complex(m)
            .first()
            .copied()
            .unwrap_or(0.0),
    }
}

/// Singular values by one-sided Jacobi on the columns, descending. The
/// rotations implicitly diagonalize the Gram matrix `MᴴM`; the explicit Gram
/// matrix is never formed, which keeps small singular values accurate.
pub fn singular_values_complex(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.dim();
    // column-major copy
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| m.get(i, j)).collect())
        .collect();

    const MAX_SWEEPS: usize = 48;
    const TOL: f64 = 1e-15;

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let (a, b, c) = gram_entries(&cols[p], &cols[q]);
                let mag = c.norm();
                if a == 0.0 || b == 0.0 || mag <= TOL * (a * b).sqrt() {
                    continue;
                }
                off = off.max(mag / (a * b).sqrt());
                // phase-align q so the Gram off-diagonal is real positive
                let phase = c.conj() / mag;
                for v in cols[q].iter_mut() {
                    *v *= phase;
                }
                let tau = (b - a) / (2.0 * mag);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                for i in 0..n {
                    let vp = cols[p][i];
                    let vq = cols[q][i];
                    cols[p][i] = vp * cs - vq * sn;
                    cols[q][i] = vp * sn + vq * cs;
                }
            }
        }
        if off <= TOL {
            break;
        }
    }

    let mut sv: Vec<f64> = cols
        .iter()
        .map(|col| col.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    sv
}

fn gram_entries(p: &[Complex64], q: &[Complex64]) -> (f64, f64, Complex64) {
    let mut a = 0.0;
    let mut b = 0.0;
    let mut c = Complex64::ZERO;
    for (vp, vq) in p.iter().zip(q) {
        a += vp.norm_sqr();
        b += vq.norm_sqr();
        c += vp.conj() * vq;
    }
    (a, b, c)
}
