//! Bounds for a user-supplied operator pair from matrix text files.

use std::fs;
use std::path::Path;

use serde::Serialize;

use semibound::jensen::{
    bound_exp, bound_exphs, bound_prim, counting_bound, negative_moment_oracle, SemigroupPair,
};
use semibound::matrix::{parse_matrix_text, ASYMMETRY_WARN};

use crate::output::{csv_f64, csv_opt, print_table, table_f64, table_opt, Csv, OutDir};

#[derive(Debug, Serialize)]
struct BoundRow {
    gamma: f64,
    oracle_moment: f64,
    prim: Option<f64>,
    prim_note: Option<String>,
    exp: Option<f64>,
    exp_note: Option<String>,
    exphs: Option<f64>,
    exphs_note: Option<String>,
}

#[derive(Debug, Serialize)]
struct BoundOutput {
    t: f64,
    diff_trace_norm: f64,
    diff_hs_norm: f64,
    rows: Vec<BoundRow>,
    counting_threshold: Option<f64>,
    counting_bound: Option<f64>,
    counting_oracle: Option<usize>,
}

pub fn run(
    a_path: &Path,
    b_path: &Path,
    t: f64,
    gammas: &[f64],
    s: Option<f64>,
    out: &Path,
) -> Result<i32, String> {
    let read_matrix = |path: &Path, label: &str| -> Result<_, String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("bound: cannot read {label} matrix {}: {e}", path.display()))?;
        let parsed =
            parse_matrix_text(&text).map_err(|e| format!("bound: {label} matrix: {e}"))?;
        if parsed.asymmetry > ASYMMETRY_WARN {
            eprintln!(
                "warning: {label} matrix asymmetry {:.3e} exceeds {ASYMMETRY_WARN:.0e}; symmetrized as (M+Mᵀ)/2",
                parsed.asymmetry
            );
        }
        Ok(parsed.operator)
    };

    let a = read_matrix(a_path, "A")?;
    let b = read_matrix(b_path, "B")?;
    let pair = SemigroupPair::new(a, b, t).map_err(|e| format!("bound: {e}"))?;

    let mut rows = Vec::new();
    for &gamma in gammas {
        let oracle = negative_moment_oracle(pair.b(), gamma).map_err(|e| format!("bound: {e}"))?;
        let (prim, prim_note) = split(bound_prim(&pair, gamma));
        let (exp, exp_note) = split(bound_exp(&pair, gamma));
        let (exphs, exphs_note) = split(bound_exphs(&pair, gamma));
        rows.push(BoundRow {
            gamma,
            oracle_moment: oracle,
            prim,
            prim_note,
            exp,
            exp_note,
            exphs,
            exphs_note,
        });
    }

    let (counting_value, counting_oracle) = match s {
        Some(threshold) => {
            let usable: Vec<f64> = gammas.iter().copied().filter(|g| *g > 1.0).collect();
            if usable.is_empty() {
                return Err("bound: the counting bound needs at least one gamma > 1".into());
            }
            let value = counting_bound(std::slice::from_ref(&pair), &usable, threshold)
                .map_err(|e| format!("bound: {e}"))?;
            let count = semibound::jensen::count_below(pair.b(), threshold)
                .map_err(|e| format!("bound: {e}"))?;
            (Some(value), Some(count))
        }
        None => (None, None),
    };

    let output = BoundOutput {
        t,
        diff_trace_norm: pair.diff_trace_norm(),
        diff_hs_norm: pair.diff_hs_norm(),
        rows,
        counting_threshold: s,
        counting_bound: counting_value,
        counting_oracle,
    };

    let out_dir = OutDir::create(out).map_err(|e| e.to_string())?;
    out_dir
        .write_json("bound.json", &output)
        .map_err(|e| e.to_string())?;

    let mut csv = Csv::new(&["gamma", "oracle", "prim", "exp", "exphs"]);
    let mut table_rows = Vec::new();
    for row in &output.rows {
        csv.row(&[
            csv_f64(row.gamma),
            csv_f64(row.oracle_moment),
            csv_opt(row.prim),
            csv_opt(row.exp),
            csv_opt(row.exphs),
        ]);
        table_rows.push(vec![
            table_f64(row.gamma),
            table_f64(row.oracle_moment),
            table_opt(row.prim),
            table_opt(row.exp),
            table_opt(row.exphs),
        ]);
    }
    out_dir
        .write_text("bound.csv", &csv.finish())
        .map_err(|e| e.to_string())?;

    print_table(&["gamma", "oracle", "GammaZeta", "C_tr", "C_HS"], &table_rows);
    if let (Some(v), Some(n)) = (counting_value, counting_oracle) {
        println!(
            "count below -{}: bound {} (actual {})",
            table_f64(s.unwrap_or(0.0)),
            table_f64(v),
            n
        );
    }

    // a computed bound falling below the oracle indicates a violation
    let mut violated = false;
    for row in &output.rows {
        for b in [row.prim, row.exp, row.exphs].into_iter().flatten() {
            if b < row.oracle_moment * (1.0 - 1e-9) {
                violated = true;
            }
        }
    }
    if let (Some(v), Some(n)) = (counting_value, counting_oracle) {
        if v < n as f64 * (1.0 - 1e-9) {
            violated = true;
        }
    }
    Ok(if violated { 2 } else { 0 })
}

fn split(
    r: Result<semibound::jensen::BoundValue, semibound::jensen::JensenError>,
) -> (Option<f64>, Option<String>) {
    match r {
        Ok(b) => (Some(b.bound), None),
        Err(e) => (None, Some(e.to_string())),
    }
}
