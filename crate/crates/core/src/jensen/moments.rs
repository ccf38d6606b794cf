//! The moment evaluations: radial integration of circle averages for γ > 1,
//! boundary extrapolation for γ = 1.

use std::cell::RefCell;

use super::angular::{angular_mean, AngularKind};
use super::{JensenError, JensenEvaluation, MomentQuery, SemigroupPair};
use crate::specfun::{adaptive_quad_opts, QuadOptions, SingularEndpoints, SpecFunError};

const RADIAL_PANEL_BUDGET: usize = 8_000;

/// Moment of the negative spectrum at the pair's own scale,
/// `Σ_{λ∈σ⁻(B)} |tλ|^γ`, through the trace-route determinant:
/// `γ(γ-1)/(2π) ∫₀¹ (1/r)|ln r|^{γ-2} ∫₀^{2π} log|det(I - F(re^{iθ}))| dθ dr`
/// for γ > 1, and the `r → 1` limit of the circle average for γ = 1.
/// For finite symmetric matrices this is an identity, up to quadrature error.
pub fn moment_via_jensen_tr(
    pair: &SemigroupPair,
    query: &MomentQuery,
) -> Result<JensenEvaluation, JensenError> {
    jensen_moment(pair, query, AngularKind::LogHTr)
}

/// Hilbert-Schmidt analog using `det(I - F(z)²)`. The squared route counts
/// extra zeros, so the value is an upper bound for the scaled moment rather
/// than an identity.
pub fn moment_via_jensen_hs(
    pair: &SemigroupPair,
    query: &MomentQuery,
) -> Result<JensenEvaluation, JensenError> {
    jensen_moment(pair, query, AngularKind::LogHHs)
}

fn jensen_moment(
    pair: &SemigroupPair,
    query: &MomentQuery,
    kind: AngularKind,
) -> Result<JensenEvaluation, JensenError> {
    if query.gamma() == 1.0 {
        return boundary_limit(pair, query, kind);
    }
    let gamma = query.gamma();
    let scale = gamma * (gamma - 1.0);

    // angular sampling error enters the final value through the weight mass
    // γ(γ-1)∫₀^{u_cap} u^{γ-2} du = γ u_cap^{γ-1} in log coordinates
    let u_cap = pair.log_support() + 1.0;
    let angular_mass = (gamma * u_cap.powf(gamma - 1.0)).max(1.0);
    let tol_ang = (0.25 * query.tol() / angular_mass).max(1e-13);

    // split at the known circle-average kinks (the zero moduli of the
    // determinant; the squared route has extra zeros of its own)
    let mut cuts = vec![0.0];
    match kind {
        AngularKind::LogHHs => cuts.extend(pair.zero_radii_hs()?),
        _ => cuts.extend(pair.zero_radii()),
    }
    cuts.push(1.0);
    let pieces = cuts.len() - 1;
    let radial_tol = (0.5 * query.tol() / scale / pieces as f64).max(1e-14);

    let records: RefCell<Vec<(f64, usize)>> = RefCell::new(Vec::new());
    let integrand = |r: f64| {
        if r <= 0.0 || r >= 1.0 {
            return 0.0;
        }
        let weight = (1.0 / r) * (-r.ln()).powf(gamma - 2.0);
        // a node's angular error enters scaled by its radial weight: nodes
        // with tiny weight (deep boundary tail) may stop early instead of
        // grinding against near-circle resolvent spikes
        let node_tol = (radial_tol / (8.0 * weight.max(1e-300))).clamp(tol_ang, 0.25);
        let am = angular_mean(pair, r, kind, node_tol);
        records.borrow_mut().push((r, am.nodes));
        weight * am.mean
    };

    let mut value = 0.0;
    let mut err = 0.0;
    for (piece_idx, window) in cuts.windows(2).enumerate() {
        let flags = SingularEndpoints {
            left: piece_idx == 0,
            right: piece_idx == pieces - 1,
        };
        let quad = adaptive_quad_opts(
            &integrand,
            window[0],
            window[1],
            &QuadOptions {
                tol: radial_tol,
                max_panels: RADIAL_PANEL_BUDGET / pieces,
            },
            flags,
        )
        .map_err(|e| scale_budget_error(e, scale))?;
        value += quad.value;
        err += quad.error_estimate;
    }

    let (radial_nodes, angular_samples_per_node): (Vec<f64>, Vec<usize>) =
        records.into_inner().into_iter().unzip();

    Ok(JensenEvaluation {
        value: scale * value,
        error_estimate: scale * err + 0.5 * query.tol(),
        radial_nodes,
        angular_samples_per_node,
        boundary_pole_warning: pair.has_boundary_pole(),
    })
}

fn scale_budget_error(e: SpecFunError, scale: f64) -> JensenError {
    match e {
        SpecFunError::QuadBudget {
            value,
            error,
            panels,
        } => JensenError::SpecFun(SpecFunError::QuadBudget {
            value: scale * value,
            error: scale * error,
            panels,
        }),
        other => JensenError::SpecFun(other),
    }
}

/// γ = 1: `Σ|tλ| = lim_{r→1}` (circle average). In finite dimension the
/// average equals `S + n ln r` exactly once `r` passes every zero modulus
/// (`n` = number of zeros, `S` the moment), so two radii determine `S`; the
/// extrapolation stops when consecutive solves agree.
fn boundary_limit(
    pair: &SemigroupPair,
    query: &MomentQuery,
    kind: AngularKind,
) -> Result<JensenEvaluation, JensenError> {
    let tol_ang = (query.tol() / 16.0).max(1e-13);
    let mut radial_nodes = Vec::new();
    let mut node_counts = Vec::new();
    let mut prev: Option<(f64, f64)> = None; // (ln r, J)
    let mut prev_s: Option<f64> = None;
    let mut history = Vec::new();

    for k in 3..=20u32 {
        let r = 1.0 - 0.5_f64.powi(k as i32);
        let am = angular_mean(pair, r, kind, tol_ang);
        radial_nodes.push(r);
        node_counts.push(am.nodes);
        let ln_r = r.ln();
        if let Some((prev_ln, prev_j)) = prev {
            let n_hat = (am.mean - prev_j) / (ln_r - prev_ln);
            let s = am.mean - n_hat * ln_r;
            history.push(s);
            if let Some(ps) = prev_s {
                if (s - ps).abs() <= 0.5 * query.tol() {
                    return Ok(JensenEvaluation {
                        value: s,
                        error_estimate: (s - ps).abs() + 2.0 * tol_ang * (1.0 + n_hat.abs()),
                        radial_nodes,
                        angular_samples_per_node: node_counts,
                        boundary_pole_warning: pair.has_boundary_pole(),
                    });
                }
            }
            prev_s = Some(s);
        }
        prev = Some((ln_r, am.mean));
    }

    Err(JensenError::LimitNotConverged {
        best: prev_s.unwrap_or(f64::NAN),
        history,
    })
}
