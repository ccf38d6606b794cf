//! The scaled-family comparison experiment.

use std::fs;
use std::path::Path;

use semibound::schrodinger::mu_scaling_scan;

use crate::config::SchrodingerConfig;
use crate::output::{csv_f64, csv_opt, print_table, table_f64, Csv, OutDir};

pub fn run(config_path: &Path, mus: &[f64], out: &Path) -> Result<i32, String> {
    let text = fs::read_to_string(config_path)
        .map_err(|e| format!("scaling-scan: cannot read {}: {e}", config_path.display()))?;
    let cfg = SchrodingerConfig::parse(&text)?;
    let potential = cfg.potential()?;
    let gamma = cfg.gammas[0];
    let p = cfg
        .p
        .ok_or_else(|| "scaling-scan: config must set p".to_string())?;
    if mus.is_empty() {
        return Err("scaling-scan: need at least one mu".into());
    }

    let scan = mu_scaling_scan(
        &potential,
        &cfg.grid,
        gamma,
        p,
        mus,
        cfg.lt(),
        &cfg.tolerances,
        cfg.compute_oracle,
    )
    .map_err(|e| format!("scaling-scan: {e}"))?;

    let out_dir = OutDir::create(out).map_err(|e| e.to_string())?;
    out_dir
        .write_json("scaling.json", &scan)
        .map_err(|e| e.to_string())?;

    let mut csv = Csv::new(&["mu", "our_bound", "lt_rhs", "oracle_moment"]);
    let mut rows = Vec::new();
    for r in &scan.rows {
        csv.row(&[
            csv_f64(r.mu),
            csv_f64(r.our_bound),
            csv_f64(r.lt_rhs),
            csv_opt(r.oracle_moment),
        ]);
        rows.push(vec![
            table_f64(r.mu),
            table_f64(r.our_bound),
            table_f64(r.lt_rhs),
            r.oracle_moment.map(table_f64).unwrap_or("-".into()),
        ]);
    }
    out_dir
        .write_text("scaling.csv", &csv.finish())
        .map_err(|e| e.to_string())?;

    print_table(&["mu", "our_bound", "lt_rhs", "oracle"], &rows);
    println!(
        "fitted slope {} (analytic {}), baseline slope {}",
        table_f64(scan.slope_bound),
        table_f64(scan.expected_slope),
        table_f64(scan.slope_lt)
    );
    Ok(0)
}
