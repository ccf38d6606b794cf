//! Full potential report plus the optional dense matrix bridge.

use std::fs;
use std::path::Path;

use serde::Serialize;

use semibound::schrodinger::{
    bound_report, end_to_end_matrix_check, BoundReport, BridgeReport, GridSpec, ReportEntry,
};

use crate::config::SchrodingerConfig;
use crate::output::{csv_f64, csv_opt, print_table, table_f64, Csv, OutDir};

#[derive(Debug, Serialize)]
struct FullReport {
    report: BoundReport,
    bridge: Vec<BridgeReport>,
}

/// Cap on the per-axis points of the bridge grid so the dense pair stays
/// within the 2000-point limit of the matrix route.
fn bridge_grid(grid: &GridSpec) -> Option<GridSpec> {
    let max_n = match grid.d {
        1 => 200usize,
        2 => 44,
        _ => 12,
    };
    let n = grid.n.min(max_n);
    if n < 8 {
        return None;
    }
    Some(GridSpec {
        d: grid.d,
        half_width: grid.half_width,
        n,
        dense_cap: grid.dense_cap,
    })
}

pub fn run(config_path: &Path, out: &Path) -> Result<i32, String> {
    let text = fs::read_to_string(config_path)
        .map_err(|e| format!("schrodinger: cannot read {}: {e}", config_path.display()))?;
    let cfg = SchrodingerConfig::parse(&text)?;
    let potential = cfg.potential()?;

    let report = bound_report(
        &potential,
        &cfg.grid,
        &cfg.gammas,
        cfg.p,
        cfg.alpha,
        cfg.lt(),
        &cfg.tolerances,
        cfg.compute_oracle,
    )
    .map_err(|e| format!("schrodinger: {e}"))?;

    // the dense bridge is the expensive part; run it for the first
    // applicable gamma only (the bounds table covers every gamma)
    let mut bridge = Vec::new();
    if !cfg.t_grid.is_empty() {
        if let Some(bg) = bridge_grid(&cfg.grid) {
            if let Some(&gamma) = cfg.gammas.iter().find(|g| **g >= 1.0) {
                let rep = end_to_end_matrix_check(&potential, &bg, gamma, &cfg.t_grid)
                    .map_err(|e| format!("schrodinger bridge: {e}"))?;
                bridge.push(rep);
            }
        }
    }

    let out_dir = OutDir::create(out).map_err(|e| e.to_string())?;
    let full = FullReport { report, bridge };
    out_dir
        .write_json("report.json", &full)
        .map_err(|e| e.to_string())?;

    // flat CSV: one row per (gamma, theorem)
    let mut csv = Csv::new(&[
        "gamma",
        "theorem",
        "status",
        "bound",
        "oracle_moment",
        "c",
        "beta_c",
        "t_implied",
        "delta",
        "kappa",
        "alpha",
        "p",
        "norm_l1",
        "norm_l2",
        "norm_lp",
        "norm_kalpha",
    ]);
    let mut table_rows = Vec::new();
    for row in &full.report.rows {
        for entry in &row.entries {
            match entry {
                ReportEntry::Bound(b) => {
                    csv.row(&[
                        csv_f64(b.gamma),
                        b.theorem.as_str().into(),
                        "ok".into(),
                        csv_f64(b.bound),
                        csv_opt(row.oracle_moment),
                        csv_opt(b.c),
                        csv_opt(b.beta_c),
                        csv_opt(b.t_implied),
                        csv_opt(b.delta),
                        csv_opt(b.kappa),
                        csv_opt(b.alpha),
                        csv_opt(b.p),
                        csv_opt(b.norm_l1),
                        csv_opt(b.norm_l2),
                        csv_opt(b.norm_lp),
                        csv_opt(b.norm_kalpha),
                    ]);
                    table_rows.push(vec![
                        table_f64(b.gamma),
                        b.theorem.as_str().into(),
                        table_f64(b.bound),
                        row.oracle_moment.map(table_f64).unwrap_or("-".into()),
                    ]);
                }
                ReportEntry::OutOfDomain { theorem, gamma, reason } => {
                    csv.row(&[
                        csv_f64(*gamma),
                        theorem.as_str().into(),
                        "out_of_domain".into(),
                        String::new(),
                        csv_opt(row.oracle_moment),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ]);
                    let _ = reason;
                    table_rows.push(vec![
                        table_f64(*gamma),
                        theorem.as_str().into(),
                        "out-of-domain".into(),
                        row.oracle_moment.map(table_f64).unwrap_or("-".into()),
                    ]);
                }
            }
        }
    }
    out_dir
        .write_text("report.csv", &csv.finish())
        .map_err(|e| e.to_string())?;

    print_table(&["gamma", "theorem", "bound", "oracle"], &table_rows);

    let mut exit = 0;
    if full.report.any_violation() {
        for row in &full.report.rows {
            for v in &row.violations {
                eprintln!("violation: {v}");
            }
        }
        exit = 2;
    }
    for rep in &full.bridge {
        if !rep.all_ok() {
            eprintln!("violation: matrix bridge failed at gamma {}", rep.gamma);
            exit = 2;
        }
    }
    Ok(exit)
}
