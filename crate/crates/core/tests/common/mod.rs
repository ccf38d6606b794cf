//! Shared oracles for the integration suites.

/// Bound-state energies of the 1-D square well (depth `v0 > 0`, half-width
/// `radius`) inside a Dirichlet box `[-L, L]`, by matching interior
/// `cos(kx)` / `sin(kx)` waves to `sinh(κ(L - |x|))` tails:
/// even parity: `k tan(kR) = κ coth(κ(L-R))`,
/// odd parity: `-k cot(kR) = κ coth(κ(L-R))`, with `κ = sqrt(v0 - k²)`.
/// The box correction matters: shallow continuum states with decay length
/// comparable to `L` are pushed out of the negative spectrum.
///
/// Returned ascending (most negative first), `E = k² - v0`.
pub fn square_well_box_levels(v0: f64, radius: f64, half_width: f64) -> Vec<f64> {
    let k_max = v0.sqrt();
    let outer = half_width - radius;
    assert!(outer > 0.0, "the box must contain the well");

    // pole-free forms: multiply through by cos(kR) tanh(κL') resp.
    // sin(kR) tanh(κL')
    let f_even = |k: f64| -> f64 {
        let kappa = (v0 - k * k).max(0.0).sqrt();
        let th = (kappa * outer).tanh();
        k * (k * radius).sin() * th - kappa * (k * radius).cos()
    };
    let f_odd = |k: f64| -> f64 {
        let kappa = (v0 - k * k).max(0.0).sqrt();
        let th = (kappa * outer).tanh();
        -k * (k * radius).cos() * th - kappa * (k * radius).sin()
    };

    let mut levels = Vec::new();
    for f in [&f_even as &dyn Fn(f64) -> f64, &f_odd] {
        let steps = 200_000;
        let hi = k_max * (1.0 - 1e-12);
        let mut prev_k = hi / steps as f64;
        let mut prev_v = f(prev_k);
        for i in 2..=steps {
            let k = hi * i as f64 / steps as f64;
            let v = f(k);
            if prev_v == 0.0 {
                levels.push(prev_k * prev_k - v0);
            } else if prev_v.signum() != v.signum() {
                let (mut lo, mut up) = (prev_k, k);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + up);
                    if f(mid).signum() == f(lo).signum() {
                        lo = mid;
                    } else {
                        up = mid;
                    }
                }
                let root = 0.5 * (lo + up);
                levels.push(root * root - v0);
            }
            prev_k = k;
            prev_v = v;
        }
    }
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    levels
}

#[allow(dead_code)]
pub fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        }
    }
    f(0.5 * (lo + hi))
}
