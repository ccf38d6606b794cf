//! Adaptive quadrature: 15-point Gauss-Kronrod panels, bisection refinement
//! driven by a worst-panel heap, and exponential substitutions
//! `x = a + w e^{-u}` (resp. `b - w e^{-u}`) on panels adjacent to flagged
//! singular endpoints. An infinite upper limit is mapped through
//! `x = a + v/(1-v)` first.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::SpecFunError;
use crate::util::pairwise_sum;

/// Positive Kronrod abscissae of the 15-point rule (symmetric about 0).
const XGK: [f64; 8] = [
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
];

const WGK: [f64; 8] = [
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
];

/// Embedded 7-point Gauss weights, for the nodes at even XGK indices.
const WG: [f64; 4] = [
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SingularEndpoints {
    pub left: bool,
    pub right: bool,
}

impl SingularEndpoints {
    pub fn none() -> Self {
        Self::default()
    }
    pub fn left() -> Self {
        Self {
            left: true,
            right: false,
        }
    }
    pub fn right() -> Self {
        Self {
            left: false,
            right: true,
        }
    }
    pub fn both() -> Self {
        Self {
            left: true,
            right: true,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Absolute tolerance target for the total error estimate.
    pub tol: f64,
    /// Total panel budget across all pieces and substitutions.
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_panels: 20_000,
        }
    }
}

pub fn adaptive_quad(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    singular: SingularEndpoints,
) -> Result<QuadResult, SpecFunError> {
    adaptive_quad_opts(
        f,
        a,
        b,
        &QuadOptions {
            tol,
            ..QuadOptions::default()
        },
        singular,
    )
}

pub fn adaptive_quad_opts(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    opts: &QuadOptions,
    singular: SingularEndpoints,
) -> Result<QuadResult, SpecFunError> {
    if !a.is_finite() || a >= b {
        return Err(SpecFunError::domain(format!("invalid interval [{a}, {b}]")));
    }
    let mut budget = opts.max_panels;
    let result = if b.is_finite() {
        integrate_finite(&f, a, b, opts.tol, singular, &mut budget)
    } else {
        // x = a + v/(1-v); the v=1 endpoint always gets the exponential
        // treatment since the image is unbounded.
        let g = |v: f64| {
            let om = 1.0 - v;
            let x = a + v / om;
            if !x.is_finite() {
                return 0.0;
            }
            f(x) / (om * om)
        };
        integrate_finite(
            &g,
            0.0,
            1.0,
            opts.tol,
            SingularEndpoints {
                left: singular.left,
                right: true,
            },
            &mut budget,
        )
    };
    // contract: |value - truth| <= max(tol, error_estimate); an error is
    // raised only when the panel budget ran out before the tolerance
    match result {
        Ok(r) => {
            if budget == 0 && r.error_estimate > opts.tol {
                Err(SpecFunError::QuadBudget {
                    value: r.value,
                    error: r.error_estimate,
                    panels: r.panels,
                })
            } else {
                Ok(r)
            }
        }
        Err(e) => Err(e),
    }
}

fn integrate_finite(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    singular: SingularEndpoints,
    budget: &mut usize,
) -> Result<QuadResult, SpecFunError> {
    let w = b - a;
    let mut total = QuadResult {
        value: 0.0,
        error_estimate: 0.0,
        panels: 0,
    };
    let mut pieces: Vec<QuadResult> = Vec::new();

    match (singular.left, singular.right) {
        (false, false) => {
            pieces.push(adaptive_core(f, a, b, tol, budget, usize::MAX));
        }
        (true, false) => {
            let c = a + 0.25 * w;
            pieces.push(left_tail(f, a, c, 0.5 * tol, budget));
            pieces.push(adaptive_core(f, c, b, 0.5 * tol, budget, usize::MAX));
        }
        (false, true) => {
            let c = b - 0.25 * w;
            pieces.push(adaptive_core(f, a, c, 0.5 * tol, budget, usize::MAX));
            pieces.push(right_tail(f, c, b, 0.5 * tol, budget));
        }
        (true, true) => {
            let c1 = a + 0.25 * w;
            let c2 = b - 0.25 * w;
            pieces.push(left_tail(f, a, c1, tol / 3.0, budget));
            pieces.push(adaptive_core(f, c1, c2, tol / 3.0, budget, usize::MAX));
            pieces.push(right_tail(f, c2, b, tol / 3.0, budget));
        }
    }

    let values: Vec<f64> = pieces.iter().map(|p| p.value).collect();
    total.value = pairwise_sum(&values);
    total.error_estimate = pieces.iter().map(|p| p.error_estimate).sum();
    total.panels = pieces.iter().map(|p| p.panels).sum::<usize>().max(1);
    Ok(total)
}

/// `∫_a^c f` with an integrable singularity at `a`:
/// substitute `x = a + w e^{-u}`, `u ∈ [0, ∞)`, and walk fixed-length
/// u-segments until their contribution is negligible.
fn left_tail(
    f: &impl Fn(f64) -> f64,
    a: f64,
    c: f64,
    tol: f64,
    budget: &mut usize,
) -> QuadResult {
    let w = c - a;
    let g = |u: f64| {
        let dx = w * (-u).exp();
        let x = a + dx;
        if x == a || dx == 0.0 {
            return 0.0;
        }
        f(x) * dx
    };
    tail_segments(&g, tol, budget, quantization_horizon(w, a))
}

fn right_tail(
    f: &impl Fn(f64) -> f64,
    c: f64,
    b: f64,
    tol: f64,
    budget: &mut usize,
) -> QuadResult {
    let w = b - c;
    let g = |u: f64| {
        let dx = w * (-u).exp();
        let x = b - dx;
        if x == b || dx == 0.0 {
            return 0.0;
        }
        f(x) * dx
    };
    tail_segments(&g, tol, budget, quantization_horizon(w, b))
}

/// Largest `u` for which `endpoint ± w e^{-u}` is still comfortably separated
/// from the endpoint in f64. Past this point pointwise evaluation of the
/// integrand is quantization noise; the remaining mass is extrapolated
/// instead. An endpoint at exactly 0 has no such horizon (subnormals reach
/// ~1e-308).
fn quantization_horizon(w: f64, endpoint: f64) -> f64 {
    if endpoint == 0.0 {
        660.0
    } else {
        (w / (f64::EPSILON * endpoint.abs())).ln() - 4.0
    }
}

/// Integrate `g` over `[0, ∞)` in fixed-width segments. Segments stop when
/// negligible or at the quantization horizon; in the latter case the rest is
/// extrapolated geometrically (exact for algebraic endpoint singularities,
/// whose segment values form a geometric sequence in this parametrization).
fn tail_segments(
    g: &impl Fn(f64) -> f64,
    tol: f64,
    budget: &mut usize,
    horizon: f64,
) -> QuadResult {
    const SEG: f64 = 8.0;
    const MAX_SEGS: usize = 84; // u up to 672
    let mut values = Vec::new();
    let mut err = 0.0;
    let mut panels = 0;
    let seg_tol = tol / 16.0;
    // truncated before the contribution went below the floor (horizon,
    // segment cap or exhausted budget): the remainder is estimated by
    // extrapolation below
    let mut truncated = true;
    for k in 0..MAX_SEGS {
        let lo = SEG * k as f64;
        let hi = lo + SEG;
        if hi > horizon {
            break;
        }
        // cap per segment: cancellation noise in the caller's integrand can
        // stall refinement, and a stalled segment must not starve the rest
        let part = adaptive_core(g, lo, hi, seg_tol, budget, 1500);
        values.push(part.value);
        err += part.error_estimate;
        panels += part.panels;
        if part.value.abs() + part.error_estimate < seg_tol {
            truncated = false;
            break;
        }
        if *budget == 0 {
            break;
        }
    }
    let mut value = pairwise_sum(&values);
    if truncated {
        let n = values.len();
        if n >= 2 && values[n - 1] != 0.0 {
            let ratio = values[n - 1] / values[n - 2];
            if ratio.is_finite() && ratio > 0.0 && ratio < 0.95 {
                let tail = values[n - 1] * ratio / (1.0 - ratio);
                value += tail;
                // algebraic singularities give exactly geometric segments, so
                // the ratio drift measures the extrapolation error
                let tail_err = if n >= 3 && values[n - 2] != 0.0 && values[n - 3] != 0.0 {
                    let prev_ratio = values[n - 2] / values[n - 3];
                    let drift = (ratio - prev_ratio).abs() / (ratio * (1.0 - ratio));
                    tail.abs() * drift.min(1.0)
                } else {
                    0.5 * tail.abs()
                };
                err += tail_err + f64::EPSILON * value.abs();
            } else {
                // not geometrically decaying: surface the unknown remainder
                err += values[n - 1].abs();
            }
        } else if n == 1 {
            err += values[0].abs() * 1e-3;
        }
    }
    QuadResult {
        value,
        error_estimate: err,
        panels,
    }
}

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

/// Worst-panel-first bisection on a finite interval with a smooth integrand.
fn adaptive_core(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    budget: &mut usize,
    cap: usize,
) -> QuadResult {
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    let (v, e) = gk15(f, a, b);
    let mut panels = 1usize;
    let mut err_sum = e;
    let mut since_resync = 0usize;
    let mut local = cap.min(*budget);
    *budget = budget.saturating_sub(1);
    local = local.saturating_sub(1);
    heap.push(Panel {
        lo: a,
        hi: b,
        value: v,
        err: e,
    });

    while err_sum > tol && *budget > 0 && local > 0 {
        let Some(worst) = heap.pop() else { break };
        err_sum -= worst.err;
        let mid = 0.5 * (worst.lo + worst.hi);
        // width at rounding floor: cannot subdivide further
        if !(worst.lo < mid && mid < worst.hi) {
            err_sum += worst.err;
            frozen.push(worst);
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let (v1, e1) = gk15(f, worst.lo, mid);
        let (v2, e2) = gk15(f, mid, worst.hi);
        *budget = budget.saturating_sub(2);
        local = local.saturating_sub(2);
        panels += 2;
        err_sum += e1 + e2;
        heap.push(Panel {
            lo: worst.lo,
            hi: mid,
            value: v1,
            err: e1,
        });
        heap.push(Panel {
            lo: mid,
            hi: worst.hi,
            value: v2,
            err: e2,
        });
        // guard the running sum against cancellation drift
        since_resync += 1;
        if since_resync >= 512 {
            since_resync = 0;
            err_sum = heap.iter().map(|p| p.err).sum::<f64>()
                + frozen.iter().map(|p| p.err).sum::<f64>();
        }
    }

    let mut all: Vec<Panel> = heap.into_vec();
    all.extend(frozen);
    // deterministic summation order
    all.sort_by(|p, q| p.lo.partial_cmp(&q.lo).unwrap_or(Ordering::Equal));
    let values: Vec<f64> = all.iter().map(|p| p.value).collect();
    QuadResult {
        value: pairwise_sum(&values),
        error_estimate: all.iter().map(|p| p.err).sum(),
        panels,
    }
}

fn gk15(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut kron = WGK[0] * fc;
    let mut gauss = WG[0] * fc;
    for i in 1..8 {
        let dx = h * XGK[i];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        kron += WGK[i] * (f1 + f2);
        if i % 2 == 0 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    kron *= h;
    gauss *= h;
    let err = (kron - gauss).abs();
    (kron, err)
}
