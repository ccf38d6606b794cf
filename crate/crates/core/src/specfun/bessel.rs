//! Modified Bessel function of the third kind `K_ν` for the orders the Green
//! kernel needs: half-integers from the `K_{1/2}` closed form plus the
//! three-term recurrence, and small integers from `K_0`, `K_1`. The integer
//! base cases use the ascending series below `x = 2` and a trapezoid sum of
//! `∫_0^∞ e^{-x cosh t} cosh(νt) dt` above it (the integrand decays doubly
//! exponentially, so the fixed-step trapezoid is accurate to machine level).

use super::SpecFunError;

const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

/// `K_ν(x)` for `x > 0` and `ν = m/2` with integer `0 ≤ m ≤ 9`.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) {
        return Err(SpecFunError::domain(format!(
            "bessel_k requires x > 0, got {x}"
        )));
    }
    let doubled = 2.0 * nu;
    let m = doubled.round();
    if nu < 0.0 || (doubled - m).abs() > 1e-12 || m > 9.0 {
        return Err(SpecFunError::domain(format!(
            "bessel_k supports orders m/2 with 0 <= m <= 9, got nu = {nu}"
        )));
    }
    let m = m as u32;
    if m % 2 == 1 {
        Ok(k_half_integer(m, x))
    } else {
        Ok(k_integer(m / 2, x))
    }
}

/// `K_{m/2}` for odd `m`, from `K_{1/2}(x) = sqrt(π/2x) e^{-x}` and
/// `K_{ν+1} = K_{ν-1} + (2ν/x) K_ν` (with `K_{-1/2} = K_{1/2}`).
fn k_half_integer(m: u32, x: f64) -> f64 {
    let k_half = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
    let mut prev = k_half; // K_{-1/2}
    let mut cur = k_half; // K_{1/2}
    let mut nu = 0.5;
    let target = m as f64 / 2.0;
    while nu < target {
        let next = prev + (2.0 * nu / x) * cur;
        prev = cur;
        cur = next;
        nu += 1.0;
    }
    cur
}

fn k_integer(n: u32, x: f64) -> f64 {
    let k0 = if x <= 2.0 { k0_series(x) } else { k_integral(0.0, x) };
    if n == 0 {
        return k0;
    }
    let k1 = if x <= 2.0 { k1_series(x) } else { k_integral(1.0, x) };
    if n == 1 {
        return k1;
    }
    let mut prev = k0;
    let mut cur = k1;
    for nu in 1..n {
        let next = prev + (2.0 * nu as f64 / x) * cur;
        prev = cur;
        cur = next;
    }
    cur
}

/// Ascending series, `x <= 2`:
/// `K_0 = -(ln(x/2)+γ) I_0 + Σ_{k≥1} H_k q^k/(k!)²`, `q = x²/4`.
fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let lg = (0.5 * x).ln() + EULER_GAMMA;
    let mut term = 1.0; // q^k/(k!)²
    let mut i0 = 1.0;
    let mut harmonic = 0.0;
    let mut correction = 0.0;
    for k in 1..=32 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        correction += term * harmonic;
        if term < 1e-18 * i0 {
            break;
        }
    }
    -lg * i0 + correction
}

/// `K_1 = 1/x + ln(x/2) I_1 - (x/4) Σ_{k≥0} (H_k + H_{k+1} - 2γ) q^k/(k!(k+1)!)`.
fn k1_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let half_log = (0.5 * x).ln();
    let mut term = 1.0; // q^k/(k!(k+1)!)
    let mut i1_sum = 1.0;
    let mut corr = 0.0 + 1.0 - 2.0 * EULER_GAMMA; // k = 0: H_0 + H_1 - 2γ
    let mut h_k = 0.0;
    let mut h_k1 = 1.0;
    for k in 1..=32 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        h_k += 1.0 / kf;
        h_k1 += 1.0 / (kf + 1.0);
        i1_sum += term;
        corr += term * (h_k + h_k1 - 2.0 * EULER_GAMMA);
        if term < 1e-18 * i1_sum {
            break;
        }
    }
    let i1 = 0.5 * x * i1_sum;
    1.0 / x + half_log * i1 - 0.25 * x * corr
}

/// Trapezoid sum of the cosh integral representation, `x > 2`.
fn k_integral(nu: f64, x: f64) -> f64 {
    let h = 0.1;
    let mut sum = 0.5 * (-x).exp(); // t = 0 term: e^{-x} cosh(0), half weight
    let mut k = 1;
    loop {
        let t = h * k as f64;
        let arg = -x * t.cosh();
        if arg < -745.0 {
            break;
        }
        let term = arg.exp() * (nu * t).cosh();
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    h * sum
}
