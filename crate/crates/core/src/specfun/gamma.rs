//! Γ and ζ. Both go through Bernoulli-number asymptotics: Stirling's series
//! (after shifting the argument past 12) for `ln Γ`, and Euler-Maclaurin
//! acceleration of the Dirichlet series for ζ. No fitted coefficients; the
//! truncation errors are far below the 1e-12 contract on the relevant ranges.

use super::SpecFunError;

/// B_2, B_4, ..., B_20.
pub(crate) const BERNOULLI_2K: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) {
        return Err(SpecFunError::domain(format!(
            "ln_gamma requires x > 0, got {x}"
        )));
    }
    // shift into the asymptotic regime: Γ(x) = Γ(x+m) / (x (x+1) ... (x+m-1))
    let mut shift_log = 0.0;
    let mut z = x;
    while z < 12.0 {
        shift_log += z.ln();
        z += 1.0;
    }
    let mut series = 0.0;
    let z2 = z * z;
    let mut zpow = z; // z^{2k-1}
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        series += b / (two_k * (two_k - 1.0) * zpow);
        zpow *= z2;
    }
    let half_log_two_pi = 0.918938533204672741780329736406;
    Ok((z - 0.5) * z.ln() - z + half_log_two_pi + series - shift_log)
}

/// `Γ(x)` for `x > 0`, relative error well under 1e-12 on the working range.
pub fn gamma_fn(x: f64) -> Result<f64, SpecFunError> {
    Ok(ln_gamma(x)?.exp())
}

/// `ζ(s)` for `s > 1` by Euler-Maclaurin: truncated Dirichlet sum plus tail
/// integral, midpoint correction and ten Bernoulli terms at N = 20.
pub fn riemann_zeta(s: f64) -> Result<f64, SpecFunError> {
    if !(s > 1.0) {
        return Err(SpecFunError::domain(format!(
            "riemann_zeta requires s > 1, got {s}"
        )));
    }
    const N: usize = 20;
    let n = N as f64;
    let mut sum = 0.0;
    for k in 1..N {
        sum += (k as f64).powf(-s);
    }
    sum += n.powf(1.0 - s) / (s - 1.0);
    sum += 0.5 * n.powf(-s);

    // Σ_k B_{2k}/(2k)! · s(s+1)...(s+2k-2) · N^{-s-2k+1}
    let mut pochhammer = s; // s(s+1)...(s+2k-2), starts at k=1 with just s
    let mut factorial = 2.0; // (2k)!
    let mut npow = n.powf(-s - 1.0); // N^{-s-2k+1}
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        sum += b / factorial * pochhammer * npow;
        let j = 2.0 * (k as f64 + 1.0);
        // advance to k+1
        pochhammer *= (s + j - 1.0) * (s + j);
        factorial *= (j + 1.0) * (j + 2.0);
        npow /= n * n;
    }
    Ok(sum)
}
