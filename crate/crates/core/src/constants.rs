//! The γ-dependent constants of the moment bounds.
//!
//! The trace-norm bound constant is
//! `C_tr(γ) = γ(γ-1)/π · (c₁ + c₂ + c₃)` and the Hilbert-Schmidt one
//! `C_HS(γ) = γ(γ-1)/π · (c₄ + c₅ + c₆)`, where the cᵢ are integrals of the
//! piecewise resolvent estimate
//! `|z|·‖(I - z e^{-A})^{-1}‖ ≤ 1/min_{u∈[0,1]}|z^{-1} - u|`
//! over the three angular regimes of the unit disk.
//!
//! c₂..c₆ have exact single-integral reductions (c₃, c₆ in closed form via Γ).
//! For c₁ this module evaluates the exact double integral
//! `∫₀¹ |ln r|^{γ-2} ∫₀^{arccos r} (1 - 2r cosθ + r²)^{-1/2} dθ dr`;
//! the cruder single-integral majorant obtained by substituting
//! `s = 1/r, y = 1/cosθ` and dropping a `1/sqrt(y(y+1))` factor is kept as
//! [`c1_upper_bound`] and only used as a cross-check. The majorant roughly
//! triples C_tr(2) and would invert its ordering against the Γζ constant, so
//! the exact piece is the one assembled into `C_tr`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use crate::specfun::{
    adaptive_quad, carlson_rf, gamma_fn, lambert_w0, riemann_zeta, SingularEndpoints, SpecFunError,
};

/// Default quadrature tolerance for constants; the paper quotes its own
/// numeric evaluation ("2.5") to two significant figures, so consumers get
/// far more than they need.
pub const DEFAULT_TOL: f64 = 1e-8;

/// One γ-snapshot of every constant, with out-of-domain entries left empty.
#[derive(Debug, Clone, Serialize)]
pub struct GammaConstants {
    pub gamma: f64,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub c3: Option<f64>,
    pub c4: Option<f64>,
    pub c5: Option<f64>,
    pub c6: Option<f64>,
    /// `γ(γ-1)/π (c1+c2+c3)`, γ > 1.
    pub c_tr: Option<f64>,
    /// `γ(γ-1)/π (c4+c5+c6)`, γ > 2.
    pub c_hs: Option<f64>,
    /// `Γ(γ+1) ζ(γ-1)`, γ > 2.
    pub prim_constant: Option<f64>,
    /// Lambert-W sharpness lower bound for C_tr, γ > 1.
    pub lower_bound: Option<f64>,
    pub quadrature_tol: f64,
}

impl GammaConstants {
    pub fn evaluate(gamma: f64, tol: f64) -> Self {
        let opt = |r: Result<f64, SpecFunError>| r.ok();
        GammaConstants {
            gamma,
            c1: opt(c_integral(1, gamma, tol)),
            c2: opt(c_integral(2, gamma, tol)),
            c3: opt(c_integral(3, gamma, tol)),
            c4: opt(c_integral(4, gamma, tol)),
            c5: opt(c_integral(5, gamma, tol)),
            c6: opt(c_integral(6, gamma, tol)),
            c_tr: opt(constant_tr(gamma, tol)),
            c_hs: opt(constant_hs(gamma, tol)),
            prim_constant: opt(prim_constant(gamma)),
            lower_bound: opt(lower_bound_tr(gamma)),
            quadrature_tol: tol,
        }
    }
}

/// The six bound integrals. Domains: `c1, c2, c3, c6` need γ > 1,
/// `c4` needs γ > 2 (it diverges like `(1-r)^{γ-3}` at r = 1),
/// `c5` needs γ > 3/2 (divergence `(1-r)^{γ-5/2}`).
/// `c3` and `c6` are returned from the Γ closed forms.
pub fn c_integral(index: u8, gamma: f64, tol: f64) -> Result<f64, SpecFunError> {
    match index {
        1 => {
            require_gamma(gamma, 1.0, "c1 is finite only for gamma > 1")?;
            c1_exact(gamma, tol)
        }
        2 => {
            require_gamma(gamma, 1.0, "c2 is finite only for gamma > 1")?;
            unit_interval_split(
                |r: f64| 0.5 * weight_r(r, gamma) * ((1.0 + r) / (1.0 - r)).ln(),
                |v: f64| 0.5 * weight_v(v, gamma) * ((2.0 - v) / v).ln(),
                tol,
            )
        }
        3 => {
            require_gamma(gamma, 1.0, "c3 is finite only for gamma > 1")?;
            Ok(std::f64::consts::FRAC_PI_2 * gamma_fn(gamma - 1.0)?)
        }
        4 => {
            require_gamma(gamma, 2.0, "c4 is finite only for gamma > 2")?;
            unit_interval_split(
                |r: f64| {
                    let ratio = (1.0 + r) / (1.0 - r);
                    weight_r(r, gamma) * (2.0 * r / (1.0 - r * r)) * ratio.sqrt().atan()
                },
                |v: f64| {
                    let r = 1.0 - v;
                    let ratio = (2.0 - v) / v;
                    weight_v(v, gamma) * (2.0 * r / (v * (2.0 - v))) * ratio.sqrt().atan()
                },
                tol,
            )
        }
        5 => {
            require_gamma(gamma, 1.5, "c5 is finite only for gamma > 3/2")?;
            unit_interval_split(
                |r: f64| weight_r(r, gamma) * r * r / ((1.0 - r) * (1.0 + r)).sqrt(),
                |v: f64| {
                    let r = 1.0 - v;
                    weight_v(v, gamma) * r * r / (v * (2.0 - v)).sqrt()
                },
                tol,
            )
        }
        6 => {
            require_gamma(gamma, 1.0, "c6 is finite only for gamma > 1")?;
            Ok(std::f64::consts::PI * 2.0_f64.powf(-gamma) * gamma_fn(gamma - 1.0)?)
        }
        other => Err(SpecFunError::domain(format!(
            "c_integral index must be 1..=6, got {other}"
        ))),
    }
}

/// Quadrature versions of the closed-form pieces, for cross-checks:
/// `c3 = (π/2)∫₀¹ |ln r|^{γ-2} dr`, `c6 = (π/2)∫₀¹ r |ln r|^{γ-2} dr`.
pub fn c_integral_quadrature_check(index: u8, gamma: f64, tol: f64) -> Result<f64, SpecFunError> {
    match index {
        3 => {
            require_gamma(gamma, 1.0, "c3 is finite only for gamma > 1")?;
            let value = unit_interval_split(
                |r: f64| weight_r(r, gamma),
                |v: f64| weight_v(v, gamma),
                tol,
            )?;
            Ok(std::f64::consts::FRAC_PI_2 * value)
        }
        6 => {
            require_gamma(gamma, 1.0, "c6 is finite only for gamma > 1")?;
            let value = unit_interval_split(
                |r: f64| r * weight_r(r, gamma),
                |v: f64| (1.0 - v) * weight_v(v, gamma),
                tol,
            )?;
            Ok(std::f64::consts::FRAC_PI_2 * value)
        }
        other => Err(SpecFunError::domain(format!(
            "quadrature check only provided for the closed-form pieces 3 and 6, got {other}"
        ))),
    }
}

/// `|ln r|^{γ-2}` in the radial variable, for `r` bounded away from 1.
#[inline]
fn weight_r(r: f64, gamma: f64) -> f64 {
    if r <= 0.0 || r >= 1.0 {
        return 0.0;
    }
    (-r.ln()).powf(gamma - 2.0)
}

/// `|ln r|^{γ-2}` expressed in the distance variable `v = 1 - r`, for `v`
/// bounded away from 1: `ln(1-v)` via `ln_1p` loses nothing for small `v`.
#[inline]
fn weight_v(v: f64, gamma: f64) -> f64 {
    if v <= 0.0 || v >= 1.0 {
        return 0.0;
    }
    (-(-v).ln_1p()).powf(gamma - 2.0)
}

/// `∫₀¹ g = ∫₀^{1/2} g(r) dr + ∫₀^{1/2} g(1-v) dv`, each half in the
/// variable that makes its own endpoint exactly representable (r near 0,
/// v = 1-r near 1). Both tails then run on exact evaluations down to
/// subnormals, with no quantization horizon.
fn unit_interval_split(
    f_r: impl Fn(f64) -> f64,
    f_v: impl Fn(f64) -> f64,
    tol: f64,
) -> Result<f64, SpecFunError> {
    let lo = adaptive_quad(f_r, 0.0, 0.5, 0.5 * tol, SingularEndpoints::left())?;
    let hi = adaptive_quad(f_v, 0.0, 0.5, 0.5 * tol, SingularEndpoints::left())?;
    Ok(lo.value + hi.value)
}

/// Exact first piece,
/// `∫₀¹ |ln r|^{γ-2} ∫₀^{arccos r} dθ / sqrt(1 - 2r cosθ + r²) dr`.
/// With `1 - 2r cosθ + r² = (1-r)² + 4r sin²(θ/2)` and the half-angle
/// identities `sin²(φ/2) = (1-r)/2`, `cos²(φ/2) = (1+r)/2` at `φ = arccos r`,
/// the inner integral reduces exactly to Carlson form:
/// `∫₀^{arccos r} ... dθ = sqrt(2/(1-r)) · R_F((1+r)/2, (1+r)/(1-r), 1)`.
fn c1_exact(gamma: f64, tol: f64) -> Result<f64, SpecFunError> {
    unit_interval_split(
        move |r: f64| {
            if r <= 0.0 {
                return 0.0;
            }
            let v = 1.0 - r;
            let angular = (2.0 / v).sqrt()
                * carlson_rf(0.5 * (1.0 + r), (1.0 + r) / v, 1.0).unwrap_or(f64::NAN);
            weight_r(r, gamma) * angular
        },
        move |v: f64| {
            if v <= 0.0 {
                return 0.0;
            }
            let angular = (2.0 / v).sqrt()
                * carlson_rf(0.5 * (2.0 - v), (2.0 - v) / v, 1.0).unwrap_or(f64::NAN);
            weight_v(v, gamma) * angular
        },
        tol,
    )
}

/// Angular factor of c₁ at fixed radius,
/// `∫_0^{arccos r} dθ / sqrt(1 - 2r cosθ + r²)`, in Carlson form (used by
/// tests to validate the elliptic reduction against direct θ-quadrature).
pub fn c1_angular_factor(r: f64) -> Result<f64, SpecFunError> {
    if !(0.0..1.0).contains(&r) {
        return Err(SpecFunError::domain(format!(
            "angular factor defined for 0 <= r < 1, got {r}"
        )));
    }
    if r == 0.0 {
        return Ok(std::f64::consts::FRAC_PI_2);
    }
    let v = 1.0 - r;
    Ok((2.0 / v).sqrt() * carlson_rf(0.5 * (2.0 - v), (2.0 - v) / v, 1.0)?)
}

/// The paper's proof-stage majorant of c₁ as a single integral over
/// `s ∈ (1, ∞)`, pulled back to `r = 1/s ∈ (0, 1)`:
/// `∫₀¹ |ln r|^{γ-2} (1+r²)^{-1/2} ln((√(1+r)+√(1+r²))² / (r(1-r))) dr`.
/// Strictly above [`c_integral`]`(1, ..)`; kept for cross-checks.
pub fn c1_upper_bound(gamma: f64, tol: f64) -> Result<f64, SpecFunError> {
    require_gamma(gamma, 1.0, "c1 is finite only for gamma > 1")?;
    unit_interval_split(
        |r: f64| {
            let rr = 1.0 + r * r;
            let root = ((1.0 + r).sqrt() + rr.sqrt()).ln();
            weight_r(r, gamma) / rr.sqrt() * (2.0 * root - r.ln() - (-r).ln_1p())
        },
        |v: f64| {
            let r = 1.0 - v;
            let rr = 1.0 + r * r;
            let root = ((2.0 - v).sqrt() + rr.sqrt()).ln();
            weight_v(v, gamma) / rr.sqrt() * (2.0 * root - (-v).ln_1p() - v.ln())
        },
        tol,
    )
}

fn require_gamma(gamma: f64, min: f64, msg: &str) -> Result<(), SpecFunError> {
    if gamma > min {
        Ok(())
    } else {
        Err(SpecFunError::domain(format!("{msg}, got gamma = {gamma}")))
    }
}

type MemoKey = (i64, u64);

fn memo_lookup(
    table: &'static OnceLock<RwLock<HashMap<MemoKey, f64>>>,
    key: MemoKey,
) -> Option<f64> {
    table
        .get_or_init(|| RwLock::new(HashMap::new()))
        .read()
        .ok()?
        .get(&key)
        .copied()
}

fn memo_store(table: &'static OnceLock<RwLock<HashMap<MemoKey, f64>>>, key: MemoKey, value: f64) {
    if let Ok(mut guard) = table.get_or_init(|| RwLock::new(HashMap::new())).write() {
        guard.insert(key, value);
    }
}

fn memo_key(gamma: f64, tol: f64) -> MemoKey {
    ((gamma * 1e12).round() as i64, tol.to_bits())
}

static TR_MEMO: OnceLock<RwLock<HashMap<MemoKey, f64>>> = OnceLock::new();
static HS_MEMO: OnceLock<RwLock<HashMap<MemoKey, f64>>> = OnceLock::new();

/// `C_tr(γ) = γ(γ-1)/π (c₁+c₂+c₃)`, γ > 1. Memoized per `(γ, tol)`; bound
/// evaluations call this in inner loops.
pub fn constant_tr(gamma: f64, tol: f64) -> Result<f64, SpecFunError> {
    require_gamma(gamma, 1.0, "C_tr(gamma) requires gamma > 1")?;
    let key = memo_key(gamma, tol);
    if let Some(v) = memo_lookup(&TR_MEMO, key) {
        return Ok(v);
    }
    let piece_tol = tol / 4.0;
    let c1 = c_integral(1, gamma, piece_tol)?;
    let c2 = c_integral(2, gamma, piece_tol)?;
    let c3 = c_integral(3, gamma, piece_tol)?;
    let value = gamma * (gamma - 1.0) / std::f64::consts::PI * (c1 + c2 + c3);
    memo_store(&TR_MEMO, key, value);
    Ok(value)
}

/// `C_HS(γ) = γ(γ-1)/π (c₄+c₅+c₆)`, γ > 2. Memoized per `(γ, tol)`.
pub fn constant_hs(gamma: f64, tol: f64) -> Result<f64, SpecFunError> {
    require_gamma(gamma, 2.0, "C_HS(gamma) requires gamma > 2")?;
    let key = memo_key(gamma, tol);
    if let Some(v) = memo_lookup(&HS_MEMO, key) {
        return Ok(v);
    }
    let piece_tol = tol / 4.0;
    let c4 = c_integral(4, gamma, piece_tol)?;
    let c5 = c_integral(5, gamma, piece_tol)?;
    let c6 = c_integral(6, gamma, piece_tol)?;
    let value = gamma * (gamma - 1.0) / std::f64::consts::PI * (c4 + c5 + c6);
    memo_store(&HS_MEMO, key, value);
    Ok(value)
}

/// `Γ(γ+1) ζ(γ-1)`, the straightforward bound constant, γ > 2.
pub fn prim_constant(gamma: f64) -> Result<f64, SpecFunError> {
    require_gamma(gamma, 2.0, "the Gamma-zeta constant requires gamma > 2")?;
    Ok(gamma_fn(gamma + 1.0)? * riemann_zeta(gamma - 1.0)?)
}

/// Sharpness floor for C_tr from the 1x1 family `A = 0, B = -b`:
/// `sup_{b>0} b^γ/(e^b - 1) = -W(-γe^{-γ}) (γ + W(-γe^{-γ}))^{γ-1}`.
pub fn lower_bound_tr(gamma: f64) -> Result<f64, SpecFunError> {
    require_gamma(gamma, 1.0, "the lower bound requires gamma > 1")?;
    let w = lambert_w0(-gamma * (-gamma).exp())?;
    Ok(-w * (gamma + w).powf(gamma - 1.0))
}
