//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Two criteria assert literature-reported values that the faithful
//! computation does not reproduce (the C_tr(2) upper bracket and the scaled
//! family slope); they fail honestly with the computed values in the message
//! rather than loosening the thresholds. See the library tests for the
//! self-consistent regression anchors.

mod common;

use std::time::Instant;

use semibound::constants::{
    c_integral, c_integral_quadrature_check, constant_tr, lower_bound_tr,
};
use semibound::jensen::{
    bound_exp, bound_exphs, bound_ggiq, bound_ineqhs, bound_prim, moment_via_jensen_hs,
    moment_via_jensen_tr, negative_moment_oracle, MomentQuery, SemigroupPair,
};
use semibound::matrix::SymmetricOperator;
use semibound::schrodinger::{
    beta_of_c, bound_report, cdp_constant, discretize, end_to_end_matrix_check, kalpha_norm,
    laplacian_matrix, lp_norm, mu_scaling_scan, negative_spectrum_moment, GridSpec, LtConstant,
    Potential, PotentialShape, QuadSpec, ReportEntry, SchrodingerTheorem,
};
use semibound::trials::{random_negative_pair, trial_rng};

fn report(num: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {num} {name}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {num} ({name}): {detail}");
}

fn ball(d: usize, amplitude: f64, radius: f64) -> Potential {
    Potential {
        d,
        shape: PotentialShape::SquareWell {
            amplitude,
            radius,
            center: vec![],
        },
    }
}

#[test]
fn criterion_01_paper_anchor_ctr_at_two() {
    let start = Instant::now();
    let lower = lower_bound_tr(2.0).unwrap();
    let ctr = constant_tr(2.0, 1e-8).unwrap();
    let elapsed = start.elapsed();

    let lower_ok = (lower - 0.6476).abs() <= 1e-3;
    let bracket_ok = (0.647..=2.525).contains(&ctr);
    let time_ok = elapsed.as_secs_f64() < 10.0;
    let pass = lower_ok && bracket_ok && time_ok;
    report(
        1,
        "paper anchor C_tr(2)",
        pass,
        &format!(
            "lower bound {lower:.6} (target 0.6476 +/- 1e-3: {lower_ok}), \
             C_tr(2) = {ctr:.10} vs bracket [0.647, 2.525]: {bracket_ok} \
             (exact evaluation of the constant's own integrals converges to 2.6075148; \
             the reported 2.5 ceiling is not reproducible from the defining integrals, \
             see the brute-force double-integral cross-check in the constants tests), \
             runtime {elapsed:.2?} < 10 s: {time_ok}"
        ),
    );
}

#[test]
fn criterion_02_identity_suite() {
    let start = Instant::now();
    let gammas = [1.5, 2.0, 3.0];
    let mut max_rel = 0.0_f64;
    let mut failures = 0usize;
    for trial in 0..50u64 {
        let dim = 2 + (trial as usize) % 7; // dims 2..=8
        let mut rng = trial_rng(1002, trial);
        let pair = random_negative_pair(&mut rng, dim, 1.0).expect("generator");
        for &gamma in &gammas {
            let oracle = pair.scaled_negative_moment(gamma);
            let query =
                MomentQuery::new(gamma, (1e-5 * (1.0 + oracle)).max(1e-7)).unwrap();
            let eval = moment_via_jensen_tr(&pair, &query).expect("jensen evaluation");
            let allowance = (1e-6_f64).max(1e-4 * oracle);
            let residual = (eval.value - oracle).abs();
            if residual > allowance {
                failures += 1;
            }
            max_rel = max_rel.max(residual / allowance);
        }
    }
    let elapsed = start.elapsed();
    let time_ok = elapsed.as_secs_f64() < 300.0;
    let pass = failures == 0 && time_ok;
    report(
        2,
        "moment identity suite",
        pass,
        &format!(
            "50 pairs x 3 gammas, {failures} residuals beyond allowance, \
             worst residual/allowance = {max_rel:.3}, runtime {elapsed:.2?} < 5 min: {time_ok}"
        ),
    );
}

#[test]
fn criterion_03_gamma_one_limit() {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for b in [0.5, 1.0, 2.0] {
        let pair = SemigroupPair::new(
            SymmetricOperator::zeros(1),
            SymmetricOperator::diagonal(&[-b]),
            1.0,
        )
        .unwrap();
        let query = MomentQuery::new(1.0, 1e-6).unwrap();
        let eval = moment_via_jensen_tr(&pair, &query).expect("limit evaluation");
        worst = worst.max((eval.value - b).abs());
    }
    let pass = worst <= 1e-4;
    report(
        3,
        "gamma = 1 boundary limit",
        pass,
        &format!(
            "1x1 family b in {{0.5, 1, 2}}: worst |limit - b| = {worst:.2e} (target 1e-4), \
             runtime {:.2?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_04_inequality_chains() {
    let start = Instant::now();
    let tr_gammas = [1.5, 2.0, 2.5, 3.0];
    let hs_gammas = [2.5, 3.0];
    let mut violations = 0usize;
    for trial in 0..200u64 {
        let dim = 2 + (trial as usize) % 7;
        let mut rng = trial_rng(1004, trial);
        let pair = random_negative_pair(&mut rng, dim, 1.0).expect("generator");

        let gamma = tr_gammas[(trial as usize) % tr_gammas.len()];
        let oracle = negative_moment_oracle(pair.b(), gamma).unwrap();
        // the quadrature target scales with the bound magnitude, which for
        // deep spectra dwarfs the oracle moment
        let exp = bound_exp(&pair, gamma).expect("exp");
        let tol = (1e-6 * (1.0 + exp.bound)).max(1e-8);
        let query = MomentQuery::new(gamma, tol).unwrap();
        let ggiq = bound_ggiq(&pair, &query).expect("ggiq");
        if oracle > ggiq.bound + tol {
            violations += 1;
        }
        if ggiq.bound > exp.bound * (1.0 + 1e-9) + tol {
            violations += 1;
        }
        if gamma > 2.0 {
            let prim = bound_prim(&pair, gamma).expect("prim");
            if exp.bound > prim.bound * (1.0 + 1e-9) {
                violations += 1;
            }
        }

        let gamma_hs = hs_gammas[(trial as usize) % hs_gammas.len()];
        let oracle_hs = negative_moment_oracle(pair.b(), gamma_hs).unwrap();
        let exphs = bound_exphs(&pair, gamma_hs).expect("exphs");
        let tol_hs = (1e-6 * (1.0 + exphs.bound)).max(1e-8);
        let query_hs = MomentQuery::new(gamma_hs, tol_hs).unwrap();
        let hs = moment_via_jensen_hs(&pair, &query_hs).expect("jensen hs");
        let ineq = bound_ineqhs(&pair, &query_hs).expect("ineqhs");
        if oracle_hs > hs.value + tol_hs {
            violations += 1;
        }
        if hs.value > ineq.bound + tol_hs {
            violations += 1;
        }
        if ineq.bound > exphs.bound * (1.0 + 1e-9) + tol_hs {
            violations += 1;
        }
    }
    let elapsed = start.elapsed();
    let time_ok = elapsed.as_secs_f64() < 600.0;
    let pass = violations == 0 && time_ok;
    report(
        4,
        "inequality chains",
        pass,
        &format!(
            "200 trials, {violations} chain violations, runtime {elapsed:.2?} < 10 min: {time_ok}"
        ),
    );
}

#[test]
fn criterion_05_closed_form_constants() {
    let start = Instant::now();
    let mut worst_c = 0.0_f64;
    for gamma in [1.5, 2.0, 3.0, 5.0] {
        for idx in [3u8, 6u8] {
            let closed = c_integral(idx, gamma, 1e-10).unwrap();
            let quad = c_integral_quadrature_check(idx, gamma, 1e-10).unwrap();
            worst_c = worst_c.max((closed - quad).abs() / closed);
        }
    }
    let mut worst_lb = 0.0_f64;
    for gamma in [1.5, 2.0, 3.0, 5.0] {
        let got = lower_bound_tr(gamma).unwrap();
        let oracle = common::golden_max(
            |b| b.powf(gamma) / (b.exp() - 1.0),
            1e-9,
            80.0,
            300,
        );
        worst_lb = worst_lb.max((got - oracle).abs() / oracle);
    }
    let pass = worst_c <= 1e-8 && worst_lb <= 1e-8;
    report(
        5,
        "closed-form constant oracles",
        pass,
        &format!(
            "c3/c6 quadrature vs closed form worst rel err {worst_c:.2e} (target 1e-8); \
             Lambert lower bound vs golden-section worst rel err {worst_lb:.2e} (target 1e-8); \
             runtime {:.2?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_06_minimization_closed_forms() {
    let start = Instant::now();
    // time minimization: min_t e^{ct/2}/t^m = (ec/(2m))^m
    let mut worst_t = 0.0_f64;
    for (c, gamma, d) in [
        (2.0, 3.0, 1usize),
        (1.0, 2.5, 2),
        (5.0, 4.0, 3),
        (0.7, 2.2, 1),
        (3.0, 3.5, 2),
    ] {
        let m = gamma + d as f64 / 2.0 - 1.0;
        // golden_max maximizes, so scan the negated objective
        let min_scan =
            -common::golden_max(|t: f64| -((0.5 * c * t).exp() / t.powf(m)), 1e-6, 1e4, 400);
        let closed = (std::f64::consts::E * c / (2.0 * m)).powf(m);
        worst_t = worst_t.max((min_scan - closed).abs() / closed);
    }
    // coupling minimization: min_{c»} c^{δα}(1-4Kc^{-α})^{-1/2}
    let mut worst_c = 0.0_f64;
    for (k_norm, alpha, m) in [
        (0.3, 0.5, 2.5),
        (1.7, 0.25, 2.0),
        (0.05, 1.0, 3.5),
        (0.9, 0.75, 1.7),
        (2.5, 0.4, 3.5),
    ] {
        let delta: f64 = m / alpha;
        let f = |c: f64| c.powf(delta * alpha) / (1.0 - 4.0 * k_norm * c.powf(-alpha)).sqrt();
        let c_min = (4.0 * k_norm).powf(1.0 / alpha);
        let scan = -common::golden_max(|c| -f(c), c_min * (1.0 + 1e-9), c_min * 1e6, 500);
        let closed = 2.0_f64.powf(delta) * (2.0 * delta + 1.0).powf(delta + 0.5)
            / delta.powf(delta)
            * k_norm.powf(delta);
        worst_c = worst_c.max((scan - closed).abs() / closed);
    }
    let pass = worst_t <= 1e-6 && worst_c <= 1e-6;
    report(
        6,
        "minimization closed forms",
        pass,
        &format!(
            "time scan worst rel err {worst_t:.2e}, coupling scan worst rel err {worst_c:.2e} \
             (targets 1e-6); runtime {:.2?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_07_beta_analytic_oracle() {
    let start = Instant::now();
    let qs = QuadSpec::default();
    let grid = GridSpec::new(3, 5.0, 24).unwrap();
    let pot = ball(3, -1.0, 1.0);
    let mut worst = 0.0_f64;
    for c in [1.0, 4.0, 16.0] {
        let got = beta_of_c(&pot, &grid, c, &qs).unwrap();
        let s = c.sqrt();
        let want = (1.0 - (-s).exp() * (1.0 + s)) / c;
        worst = worst.max((got - want).abs() / want);
    }
    let mut decayed = true;
    let mut prev = f64::INFINITY;
    let mut last = f64::INFINITY;
    for k in 0..=8 {
        let c = 4.0_f64.powi(k);
        let beta = beta_of_c(&pot, &grid, c, &qs).unwrap();
        if beta > prev {
            decayed = false;
        }
        prev = beta;
        last = beta;
    }
    let pass = worst <= 1e-3 && decayed && last < 1e-4;
    report(
        7,
        "resolvent sup analytic oracle",
        pass,
        &format!(
            "unit ball: worst rel err vs closed form {worst:.2e} (target 1e-3); \
             beta(4^k) decreasing: {decayed}, beta(4^8) = {last:.2e}; runtime {:.2?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_08_embedding_constant_checks() {
    let start = Instant::now();
    let qs = QuadSpec::default();
    let c32 = cdp_constant(3, 2.0, &qs).unwrap();
    let c32_want = 1.0 / (8.0 * std::f64::consts::PI).sqrt();
    let c32_ok = (c32 - c32_want).abs() <= 1e-6;

    let suite: Vec<Potential> = vec![
        ball(3, -1.0, 1.0),
        ball(3, -2.0, 0.5),
        Potential {
            d: 3,
            shape: PotentialShape::GaussianWell {
                amplitude: -1.0,
                radius: 1.0,
                center: vec![],
            },
        },
        Potential {
            d: 3,
            shape: PotentialShape::GaussianWell {
                amplitude: -0.7,
                radius: 1.5,
                center: vec![],
            },
        },
        Potential {
            d: 3,
            shape: PotentialShape::PowerLawCutoff {
                amplitude: -1.0,
                radius: 2.0,
                exponent: 0.5,
                center: vec![],
            },
        },
    ];
    let mut embedding_ok = true;
    let mut worst_ratio = 0.0_f64;
    for p in [2.0, 3.0] {
        let alpha = 1.0 - 3.0 / (2.0 * p);
        let cdp = cdp_constant(3, p, &qs).unwrap();
        for pot in &suite {
            let grid = match pot.support_radius() {
                Some(r) => GridSpec::new(3, 5.0 * r, 96).unwrap(),
                None => GridSpec::new(3, 5.0, 96).unwrap(),
            };
            let numeric = kalpha_norm(pot, &grid, alpha, &qs).unwrap();
            let disc = discretize(pot, &grid).unwrap();
            let lp = lp_norm(&disc.negative, &grid, p).unwrap();
            let ratio = numeric.value / (cdp * lp);
            worst_ratio = worst_ratio.max(ratio);
            if ratio > 1.01 {
                embedding_ok = false;
            }
        }
    }
    let pass = c32_ok && embedding_ok;
    report(
        8,
        "Lebesgue embedding checks",
        pass,
        &format!(
            "C_{{3,2}} = {c32:.9} vs (8 pi)^(-1/2) = {c32_want:.9} within 1e-6: {c32_ok}; \
             5 potentials x p in {{2,3}}: worst K-norm/(C*Lp) ratio {worst_ratio:.4} \
             (allowed 1.01): {embedding_ok}; runtime {:.2?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_09_schrodinger_end_to_end() {
    let start = Instant::now();
    // discrete spectrum vs transcendental quantization at n = 2000
    let grid = GridSpec::new(1, 5.0, 2000).unwrap();
    let well = ball(1, -10.0, 1.0);
    let a = laplacian_matrix(&grid).unwrap();
    let disc = discretize(&well, &grid).unwrap();
    let h = a.add_diagonal(&disc.negative).unwrap();
    let discrete: Vec<f64> = h
        .eigenvalues()
        .unwrap()
        .into_iter()
        .filter(|l| *l < 0.0)
        .collect();
    let oracle_levels = common::square_well_box_levels(10.0, 1.0, 5.0);
    let count_ok = discrete.len() == oracle_levels.len();
    let mut worst_level = 0.0_f64;
    if count_ok {
        for (d, o) in discrete.iter().zip(&oracle_levels) {
            worst_level = worst_level.max((d - o).abs() / o.abs());
        }
    }
    let levels_ok = count_ok && worst_level <= 0.01;

    // every applicable explicit bound dominates the oracle moment
    let qs = QuadSpec::default();
    let report_out = bound_report(
        &well,
        &grid,
        &[2.5, 3.0],
        Some(3.0),
        Some(0.5),
        LtConstant::default(),
        &qs,
        true,
    )
    .unwrap();
    let mut bounds_ok = true;
    let mut checked = 0usize;
    for row in &report_out.rows {
        let oracle = row.oracle_moment.unwrap();
        for entry in &row.entries {
            if let ReportEntry::Bound(b) = entry {
                if b.theorem == SchrodingerTheorem::LiebThirring {
                    continue; // unit-constant baseline, not a certified bound
                }
                checked += 1;
                if b.bound < oracle * 0.98 {
                    bounds_ok = false;
                }
            }
        }
    }

    // matrix bridge at n = 200
    let bridge_grid = GridSpec::new(1, 5.0, 200).unwrap();
    let bridge = end_to_end_matrix_check(&well, &bridge_grid, 3.0, &[1.0]).unwrap();
    let bridge_ok = bridge.all_ok();
    let bridge_residual = bridge.rows[0].residual;
    let bridge_allowance = bridge.rows[0].allowance;

    let elapsed = start.elapsed();
    let time_ok = elapsed.as_secs_f64() < 600.0;
    let pass = levels_ok && bounds_ok && bridge_ok && time_ok;
    report(
        9,
        "Schrodinger end to end",
        pass,
        &format!(
            "levels: {} discrete vs {} oracle, worst rel dev {worst_level:.2e} <= 1%: {levels_ok}; \
             {checked} explicit bounds >= oracle: {bounds_ok}; \
             bridge residual {bridge_residual:.2e} <= {bridge_allowance:.2e}: {bridge_ok}; \
             runtime {elapsed:.2?} < 10 min: {time_ok}",
            discrete.len(),
            oracle_levels.len()
        ),
    );
}

#[test]
fn criterion_10_mu_scaling_comparison() {
    let start = Instant::now();
    let w = Potential {
        d: 3,
        shape: PotentialShape::GaussianWell {
            amplitude: -1.0,
            radius: 1.0,
            center: vec![],
        },
    };
    let grid = GridSpec::new(3, 5.0, 64).unwrap();
    let qs = QuadSpec::default();
    let scan = mu_scaling_scan(
        &w,
        &grid,
        3.0,
        3.0,
        &[0.25, 0.5, 1.0, 2.0, 4.0],
        LtConstant::default(),
        &qs,
        false,
    )
    .unwrap();

    let stated_slope = -14.0 / 9.0;
    let slope_ok = (scan.slope_bound - stated_slope).abs() <= 0.05 * stated_slope.abs();
    let lt_ok = scan.slope_lt.abs() <= 0.05;
    let signs: Vec<bool> = scan.rows.iter().map(|r| r.our_bound > r.lt_rhs).collect();
    let crossing_ok = signs.iter().any(|s| *s) && signs.iter().any(|s| !*s);

    let pass = slope_ok && lt_ok && crossing_ok;
    report(
        10,
        "scaled family comparison",
        pass,
        &format!(
            "fitted slope {:.6} vs stated -14/9 = {stated_slope:.6} within 5%: {slope_ok} \
             (the fit matches the per-norm scaling exponent (a-d)+delta*(a-d/p) = {:.6} to \
             machine precision; the stated closed form disagrees with the norm scaling the \
             suite itself verifies); baseline slope {:.2e} within 0.05: {lt_ok}; \
             bound/baseline curves cross inside the mu range: {crossing_ok}; runtime {:.2?}",
            scan.slope_bound,
            scan.expected_slope,
            scan.slope_lt,
            start.elapsed()
        ),
    );
}
