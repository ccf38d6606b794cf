//! Upper bounds on `Σ_{λ∈σ⁻(B)} |λ|^γ`. The quadrature bounds integrate norm
//! envelopes of the determinant integrand; the closed-constant bounds
//! multiply a Schatten norm of `D_t` by a γ-constant. Everything carries the
//! `t^{-γ}` rescaling, so values bound the unscaled moment of `B`.

use std::cell::RefCell;

use super::angular::{sample, AngularKind};
use super::{BoundValue, JensenError, MomentQuery, SemigroupPair, TheoremTag};
use crate::constants;
use crate::specfun::{adaptive_quad_opts, QuadOptions, SingularEndpoints};

const RADIAL_PANEL_BUDGET: usize = 8_000;
const ANGULAR_PANEL_BUDGET: usize = 2_000;

fn require_gamma(gamma: f64, min: f64, what: &str) -> Result<(), JensenError> {
    if gamma > min {
        Ok(())
    } else {
        Err(JensenError::GammaDomain(format!(
            "{what} requires gamma > {min}, got {gamma}"
        )))
    }
}

/// Trace-norm quadrature bound:
/// `t^{-γ} γ(γ-1)/(2π) ∫₀¹ |ln r|^{γ-2} ∫₀^{2π} ‖(I - re^{iθ}e^{-tA})^{-1} D_t‖_tr dθ dr`,
/// with the trace norm at each node computed from singular values.
pub fn bound_ggiq(pair: &SemigroupPair, query: &MomentQuery) -> Result<BoundValue, JensenError> {
    quadrature_bound(pair, query, AngularKind::TraceNorm)
}

/// Hilbert-Schmidt quadrature bound:
/// `t^{-γ} γ(γ-1)/(2π) ∫₀¹ r |ln r|^{γ-2} ∫₀^{2π} ‖(I - re^{iθ}e^{-tA})^{-1} D_t‖²_HS dθ dr`.
pub fn bound_ineqhs(pair: &SemigroupPair, query: &MomentQuery) -> Result<BoundValue, JensenError> {
    quadrature_bound(pair, query, AngularKind::HsNormSq)
}

fn quadrature_bound(
    pair: &SemigroupPair,
    query: &MomentQuery,
    kind: AngularKind,
) -> Result<BoundValue, JensenError> {
    let gamma = query.gamma();
    require_gamma(gamma, 1.0, "the norm-envelope quadrature bound")?;
    let scale = gamma * (gamma - 1.0);
    let t_pow = pair.t().powf(gamma);
    // the radial integral gets multiplied by scale/t^γ afterwards
    let radial_tol = (0.5 * query.tol() * t_pow / scale).max(1e-14);
    let tol_ang = (radial_tol / 64.0).max(1e-13);

    // the norm integrands are smooth positive functions of θ with (at worst)
    // a sharp resolvent peak at θ = 0; adaptive panels over the half circle
    // resolve the peak in logarithmically many subdivisions, where a uniform
    // periodic rule would need ~1/width nodes
    let records: RefCell<Vec<(f64, usize)>> = RefCell::new(Vec::new());
    let angular_mean_adaptive = |r: f64| -> f64 {
        let f = |theta: f64| sample(pair, r, theta, kind);
        match adaptive_quad_opts(
            f,
            0.0,
            std::f64::consts::PI,
            &QuadOptions {
                tol: tol_ang * std::f64::consts::PI,
                max_panels: ANGULAR_PANEL_BUDGET,
            },
            SingularEndpoints::none(),
        ) {
            Ok(q) => {
                records.borrow_mut().push((r, q.panels * 15));
                q.value / std::f64::consts::PI
            }
            Err(crate::specfun::SpecFunError::QuadBudget { value, .. }) => {
                records.borrow_mut().push((r, ANGULAR_PANEL_BUDGET * 15));
                value / std::f64::consts::PI
            }
            Err(_) => f64::NAN,
        }
    };
    let integrand = |r: f64| {
        if r <= 0.0 || r >= 1.0 {
            return 0.0;
        }
        let mean = angular_mean_adaptive(r);
        let weight = match kind {
            AngularKind::TraceNorm => (-r.ln()).powf(gamma - 2.0),
            AngularKind::HsNormSq => r * (-r.ln()).powf(gamma - 2.0),
            _ => unreachable!("quadrature bounds use norm kinds"),
        };
        weight * mean
    };

    let quad = adaptive_quad_opts(
        &integrand,
        0.0,
        1.0,
        &QuadOptions {
            tol: radial_tol,
            max_panels: RADIAL_PANEL_BUDGET,
        },
        SingularEndpoints::both(),
    )?;

    let (theorem, norm_value) = match kind {
        AngularKind::TraceNorm => (TheoremTag::Ggiq, pair.diff_trace_norm()),
        AngularKind::HsNormSq => {
            let hs = pair.diff_hs_norm();
            (TheoremTag::Ineqhs, hs * hs)
        }
        _ => unreachable!(),
    };

    Ok(BoundValue {
        bound: scale * quad.value / t_pow,
        theorem,
        gamma,
        t: pair.t(),
        norm_value,
        constant: None,
    })
}

/// `Γ(γ+1) ζ(γ-1) t^{-γ} ‖D_t‖_tr`, γ > 2.
pub fn bound_prim(pair: &SemigroupPair, gamma: f64) -> Result<BoundValue, JensenError> {
    require_gamma(gamma, 2.0, "the Gamma-zeta trace bound")?;
    let constant = constants::prim_constant(gamma)?;
    let norm = pair.diff_trace_norm();
    Ok(BoundValue {
        bound: constant * pair.t().powf(-gamma) * norm,
        theorem: TheoremTag::Prim,
        gamma,
        t: pair.t(),
        norm_value: norm,
        constant: Some(constant),
    })
}

/// `C_tr(γ) t^{-γ} ‖D_t‖_tr`, γ > 1.
pub fn bound_exp(pair: &SemigroupPair, gamma: f64) -> Result<BoundValue, JensenError> {
    require_gamma(gamma, 1.0, "the refined trace bound")?;
    let constant = constants::constant_tr(gamma, constants::DEFAULT_TOL)?;
    let norm = pair.diff_trace_norm();
    Ok(BoundValue {
        bound: constant * pair.t().powf(-gamma) * norm,
        theorem: TheoremTag::Exp,
        gamma,
        t: pair.t(),
        norm_value: norm,
        constant: Some(constant),
    })
}

/// `C_HS(γ) t^{-γ} ‖D_t‖²_HS`, γ > 2.
pub fn bound_exphs(pair: &SemigroupPair, gamma: f64) -> Result<BoundValue, JensenError> {
    require_gamma(gamma, 2.0, "the Hilbert-Schmidt bound")?;
    let constant = constants::constant_hs(gamma, constants::DEFAULT_TOL)?;
    let hs = pair.diff_hs_norm();
    Ok(BoundValue {
        bound: constant * pair.t().powf(-gamma) * hs * hs,
        theorem: TheoremTag::ExpHs,
        gamma,
        t: pair.t(),
        norm_value: hs * hs,
        constant: Some(constant),
    })
}

/// Eigenvalue-counting bound: `N(-s) ≤ min over the (t, γ) grid of
/// `C_tr(γ) (st)^{-γ} ‖D_t‖_tr`. Refining the grid never increases the value.
pub fn counting_bound(
    pairs: &[SemigroupPair],
    gammas: &[f64],
    s: f64,
) -> Result<f64, JensenError> {
    if pairs.is_empty() || gammas.is_empty() {
        return Err(JensenError::EmptyGrid);
    }
    if !(s > 0.0) {
        return Err(JensenError::BadThreshold(s));
    }
    for &g in gammas {
        require_gamma(g, 1.0, "the counting bound")?;
    }
    let mut best = f64::INFINITY;
    for pair in pairs {
        let norm = pair.diff_trace_norm();
        for &gamma in gammas {
            let c = constants::constant_tr(gamma, constants::DEFAULT_TOL)?;
            let value = c * (s * pair.t()).powf(-gamma) * norm;
            best = best.min(value);
        }
    }
    Ok(best)
}
