//! Randomized verification runs: the moment identity and the bound chains on
//! seeded operator pairs, with per-trial CSV artifacts.

use std::path::Path;

use serde::Serialize;

use semibound::jensen::{
    bound_exp, bound_exphs, bound_ggiq, bound_ineqhs, bound_prim, moment_via_jensen_hs,
    moment_via_jensen_tr, negative_moment_oracle, MomentQuery,
};
use semibound::trials::{random_negative_pair, trial_rng, TrialError};

use crate::output::{csv_f64, print_table, table_f64, Csv, OutDir};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    IdentityTr,
    IdentityHs,
    ChainTr,
    ChainHs,
}

impl VerifyMode {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "identity-tr" => Ok(Self::IdentityTr),
            "identity-hs" => Ok(Self::IdentityHs),
            "chain-tr" => Ok(Self::ChainTr),
            "chain-hs" => Ok(Self::ChainHs),
            other => Err(format!(
                "verify: unknown mode {other:?} (expected identity-tr, identity-hs, chain-tr, chain-hs)"
            )),
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            Self::IdentityTr => "identity-tr",
            Self::IdentityHs => "identity-hs",
            Self::ChainTr => "chain-tr",
            Self::ChainHs => "chain-hs",
        }
    }
}

#[derive(Debug, Serialize)]
struct Summary {
    mode: String,
    dim: usize,
    trials: u64,
    seed: u64,
    completed: u64,
    skipped: u64,
    violations: u64,
    max_residual: f64,
}

struct RowSink {
    csv: Csv,
}

#[allow(clippy::too_many_arguments)]
pub fn run(
    mode: VerifyMode,
    dim: usize,
    trials: u64,
    gammas: &[f64],
    seed: u64,
    tol: Option<f64>,
    out: &Path,
) -> Result<i32, String> {
    if dim == 0 {
        return Err("verify: dim must be at least 1".into());
    }
    if matches!(mode, VerifyMode::IdentityTr | VerifyMode::IdentityHs) && dim > 16 {
        return Err("verify: identity modes are limited to dim <= 16 (determinant quadrature cost)".into());
    }
    if gammas.is_empty() {
        return Err("verify: need at least one gamma".into());
    }

    let mut sink = RowSink {
        csv: Csv::new(&[
            "trial", "gamma", "status", "oracle", "value_a", "value_b", "value_c", "residual",
            "allowance", "pass",
        ]),
    };
    let mut violations = 0u64;
    let mut skipped = 0u64;
    let mut completed = 0u64;
    let mut max_residual = 0.0_f64;

    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let pair = match random_negative_pair(&mut rng, dim, 1.0) {
            Ok(p) => p,
            Err(TrialError::NoNegativeSpectrum { .. }) => {
                skipped += 1;
                sink.csv.row(&[
                    trial.to_string(),
                    String::new(),
                    "skipped_no_negative_spectrum".into(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]);
                continue;
            }
            Err(e) => return Err(format!("verify: {e}")),
        };
        completed += 1;

        for &gamma in gammas {
            let result = run_one(mode, &pair, gamma, tol, trial, &mut sink);
            match result {
                Ok((residual, pass)) => {
                    max_residual = max_residual.max(residual);
                    if !pass {
                        violations += 1;
                    }
                }
                Err(domain_msg) => {
                    sink.csv.row(&[
                        trial.to_string(),
                        csv_f64(gamma),
                        format!("out_of_domain:{domain_msg}"),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ]);
                }
            }
        }
    }

    let summary = Summary {
        mode: mode.as_str().into(),
        dim,
        trials,
        seed,
        completed,
        skipped,
        violations,
        max_residual,
    };

    let out_dir = OutDir::create(out).map_err(|e| e.to_string())?;
    out_dir
        .write_text(
            &format!("verify_{}.csv", mode.as_str()),
            &sink.csv.finish(),
        )
        .map_err(|e| e.to_string())?;
    out_dir
        .write_json(&format!("verify_{}.json", mode.as_str()), &summary)
        .map_err(|e| e.to_string())?;

    print_table(
        &["mode", "trials", "completed", "skipped", "violations", "max_residual"],
        &[vec![
            summary.mode.clone(),
            summary.trials.to_string(),
            summary.completed.to_string(),
            summary.skipped.to_string(),
            summary.violations.to_string(),
            table_f64(summary.max_residual),
        ]],
    );

    Ok(if violations > 0 { 2 } else { 0 })
}

/// Returns (residual-or-margin magnitude, pass) or a domain-error message.
fn run_one(
    mode: VerifyMode,
    pair: &semibound::jensen::SemigroupPair,
    gamma: f64,
    tol: Option<f64>,
    trial: u64,
    sink: &mut RowSink,
) -> Result<(f64, bool), String> {
    match mode {
        VerifyMode::IdentityTr => {
            if gamma < 1.0 {
                return Err("identity needs gamma >= 1".into());
            }
            let oracle = pair.scaled_negative_moment(gamma);
            let q_tol = tol.unwrap_or((1e-5 * (1.0 + oracle)).max(1e-7));
            let query = MomentQuery::new(gamma, q_tol).map_err(|e| e.to_string())?;
            let eval = moment_via_jensen_tr(pair, &query).map_err(|e| e.to_string())?;
            let residual = (eval.value - oracle).abs();
            let allowance = (1e-6_f64).max(1e-4 * oracle);
            let pass = residual <= allowance;
            sink.csv.row(&[
                trial.to_string(),
                csv_f64(gamma),
                "ok".into(),
                csv_f64(oracle),
                csv_f64(eval.value),
                String::new(),
                String::new(),
                csv_f64(residual),
                csv_f64(allowance),
                (pass as u8).to_string(),
            ]);
            Ok((residual, pass))
        }
        VerifyMode::IdentityHs => {
            if gamma < 1.0 {
                return Err("identity needs gamma >= 1".into());
            }
            let oracle = pair.scaled_negative_moment(gamma);
            let q_tol = tol.unwrap_or((1e-5 * (1.0 + oracle)).max(1e-7));
            let query = MomentQuery::new(gamma, q_tol).map_err(|e| e.to_string())?;
            let eval = moment_via_jensen_hs(pair, &query).map_err(|e| e.to_string())?;
            // inequality contract: the squared route dominates the moment
            let margin = eval.value - oracle;
            let pass = eval.value.is_finite() && margin >= -q_tol;
            sink.csv.row(&[
                trial.to_string(),
                csv_f64(gamma),
                "ok".into(),
                csv_f64(oracle),
                csv_f64(eval.value),
                String::new(),
                String::new(),
                csv_f64(margin),
                csv_f64(q_tol),
                (pass as u8).to_string(),
            ]);
            Ok((margin.max(0.0), pass))
        }
        VerifyMode::ChainTr => {
            if gamma <= 1.0 {
                return Err("the trace chain needs gamma > 1".into());
            }
            let oracle = negative_moment_oracle(pair.b(), gamma).map_err(|e| e.to_string())?;
            let exp = bound_exp(pair, gamma).map_err(|e| e.to_string())?;
            // scale the quadrature target with the bound magnitude
            let q_tol = tol.unwrap_or((1e-6 * (1.0 + exp.bound)).max(1e-8));
            let query = MomentQuery::new(gamma, q_tol).map_err(|e| e.to_string())?;
            let ggiq = bound_ggiq(pair, &query).map_err(|e| e.to_string())?;
            let mut pass = oracle <= ggiq.bound + q_tol
                && ggiq.bound <= exp.bound * (1.0 + 1e-9) + q_tol;
            let mut prim_value = f64::NAN;
            if gamma > 2.0 {
                let prim = bound_prim(pair, gamma).map_err(|e| e.to_string())?;
                prim_value = prim.bound;
                pass = pass && exp.bound <= prim.bound * (1.0 + 1e-9);
            }
            sink.csv.row(&[
                trial.to_string(),
                csv_f64(gamma),
                "ok".into(),
                csv_f64(oracle),
                csv_f64(ggiq.bound),
                csv_f64(exp.bound),
                csv_f64(prim_value),
                csv_f64((ggiq.bound - oracle).max(0.0)),
                csv_f64(q_tol),
                (pass as u8).to_string(),
            ]);
            Ok(((oracle - ggiq.bound).max(0.0), pass))
        }
        VerifyMode::ChainHs => {
            if gamma <= 2.0 {
                return Err("the Hilbert-Schmidt chain needs gamma > 2".into());
            }
            let oracle = negative_moment_oracle(pair.b(), gamma).map_err(|e| e.to_string())?;
            let exphs = bound_exphs(pair, gamma).map_err(|e| e.to_string())?;
            let q_tol = tol.unwrap_or((1e-6 * (1.0 + exphs.bound)).max(1e-8));
            let query = MomentQuery::new(gamma, q_tol).map_err(|e| e.to_string())?;
            let hs = moment_via_jensen_hs(pair, &query).map_err(|e| e.to_string())?;
            let ineq = bound_ineqhs(pair, &query).map_err(|e| e.to_string())?;
            // the jensen-hs value lives at the pair scale; t = 1 in trials
            let pass = oracle <= hs.value + q_tol
                && hs.value <= ineq.bound + q_tol
                && ineq.bound <= exphs.bound * (1.0 + 1e-9) + q_tol;
            sink.csv.row(&[
                trial.to_string(),
                csv_f64(gamma),
                "ok".into(),
                csv_f64(oracle),
                csv_f64(hs.value),
                csv_f64(ineq.bound),
                csv_f64(exphs.bound),
                csv_f64((hs.value - oracle).max(0.0)),
                csv_f64(q_tol),
                (pass as u8).to_string(),
            ]);
            Ok(((oracle - hs.value).max(0.0), pass))
        }
    }
}
