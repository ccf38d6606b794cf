//! Circle averages over `z = r e^{iθ}`. Periodic midpoint rule with node
//! doubling: offsets `θ_j = 2π(j+1/2)/N` never sample `θ = 0`, where the
//! trace-route determinant has its (real-axis) zeros, and real matrices make
//! every integrand even in `θ`, so only half the circle is evaluated.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{h_log_hs, h_log_tr, SemigroupPair};
use crate::matrix::singular_values_complex;
use crate::util::pairwise_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum AngularKind {
    /// `log |det(I - F(z))|`
    LogHTr,
    /// `log |det(I - F(z)²)|`
    LogHHs,
    /// `‖(I - z e^{-tA})^{-1} D_t‖_tr`
    TraceNorm,
    /// `‖(I - z e^{-tA})^{-1} D_t‖²_HS`
    HsNormSq,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct AngularMean {
    pub mean: f64,
    pub nodes: usize,
}

pub(crate) const ANGULAR_START: usize = 32;
pub(crate) const ANGULAR_CAP: usize = 1 << 17;

pub(crate) fn sample(pair: &SemigroupPair, r: f64, theta: f64, kind: AngularKind) -> f64 {
    let z = Complex64::from_polar(r, theta);
    match kind {
        AngularKind::LogHTr => h_log_tr(pair, z).map(|ld| ld.log_abs).unwrap_or(f64::NAN),
        AngularKind::LogHHs => h_log_hs(pair, z).map(|ld| ld.log_abs).unwrap_or(f64::NAN),
        AngularKind::TraceNorm => match pair.resolvent_applied_rotated(z) {
            Ok(x) => singular_values_complex(&x).iter().sum(),
            Err(_) => f64::NAN,
        },
        AngularKind::HsNormSq => pair.resolvent_hs_norm_sq(z).unwrap_or(f64::NAN),
    }
}

fn mean_with_n(pair: &SemigroupPair, r: f64, kind: AngularKind, n: usize) -> (f64, usize) {
    let half = n / 2;
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let work_heavy = pair.dim() >= 48 || half >= 2048;
    let values: Vec<f64> = if work_heavy {
        (0..half)
            .into_par_iter()
            .map(|j| sample(pair, r, (j as f64 + 0.5) * step, kind))
            .collect()
    } else {
        (0..half)
            .map(|j| sample(pair, r, (j as f64 + 0.5) * step, kind))
            .collect()
    };
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    let skipped = values.len() - finite.len();
    if finite.is_empty() {
        return (f64::NAN, skipped);
    }
    // a skipped node is an exact determinant zero on the sampling set
    // (measure zero); average over the finite samples
    (pairwise_sum(&finite) / finite.len() as f64, skipped)
}

/// Doubles the node count from 64 until two successive estimates agree to
/// `tol`. Returns the last estimate with the observed difference as error.
pub(crate) fn angular_mean(
    pair: &SemigroupPair,
    r: f64,
    kind: AngularKind,
    tol: f64,
) -> AngularMean {
    let mut n = ANGULAR_START;
    let (mut prev, mut prev_skip) = mean_with_n(pair, r, kind, n);
    loop {
        let next_n = n * 2;
        if next_n > ANGULAR_CAP {
            let _ = prev_skip;
            return AngularMean { mean: prev, nodes: n };
        }
        let (cur, cur_skip) = mean_with_n(pair, r, kind, next_n);
        let diff = (cur - prev).abs();
        if diff <= tol && cur_skip == 0 {
            return AngularMean {
                mean: cur,
                nodes: next_n,
            };
        }
        n = next_n;
        prev = cur;
        prev_skip = cur_skip;
    }
}
