//! Principal branch of the Lambert W function (inverse of `w e^w`) on
//! `[-1/e, ∞)`, by Halley iteration from branch-point / logarithmic seeds.

use super::SpecFunError;

const INV_E: f64 = 1.0 / std::f64::consts::E;
const MAX_ITER: usize = 50;

pub fn lambert_w0(x: f64) -> Result<f64, SpecFunError> {
    if x < -INV_E {
        // allow tiny excursions from rounding of -1/e itself
        if x > -INV_E - 1e-16 {
            return Ok(-1.0);
        }
        return Err(SpecFunError::domain(format!(
            "lambert_w0 requires x >= -1/e, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }

    let mut w = initial_guess(x);
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        // Halley step
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let dw = f / denom;
        w -= dw;
        if w < -1.0 {
            // principal branch: clamp overshoot near the branch point
            w = -1.0 + 1e-300;
        }
        if dw.abs() <= 1e-15 * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

fn initial_guess(x: f64) -> f64 {
    if x < -0.25 {
        // branch-point expansion around x = -1/e
        let p = (2.0 * (std::f64::consts::E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0
    } else if x < std::f64::consts::E {
        // series seed near 0, adequate to start Halley anywhere in (-1/4, e)
        let w = x * (1.0 - x + 1.5 * x * x);
        if w <= -1.0 {
            -0.99
        } else {
            w
        }
    } else {
        // asymptotic seed for large arguments
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}
