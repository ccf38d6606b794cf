use std::path::Path;

use semibound::constants::{GammaConstants, DEFAULT_TOL};

use crate::output::{csv_f64, csv_opt, print_table, table_f64, table_opt, Csv, OutDir};

pub fn run(gammas: &[f64], tol: Option<f64>, out: &Path) -> Result<i32, String> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    if gammas.is_empty() {
        return Err("constants: need at least one gamma".into());
    }
    let records: Vec<GammaConstants> = gammas
        .iter()
        .map(|&g| GammaConstants::evaluate(g, tol))
        .collect();

    let out_dir = OutDir::create(out).map_err(|e| e.to_string())?;
    out_dir
        .write_json("constants.json", &records)
        .map_err(|e| e.to_string())?;

    let mut csv = Csv::new(&[
        "gamma",
        "c1",
        "c2",
        "c3",
        "c4",
        "c5",
        "c6",
        "c_tr",
        "c_hs",
        "gamma_zeta",
        "lower_bound",
        "quadrature_tol",
    ]);
    let mut table_rows = Vec::new();
    for r in &records {
        csv.row(&[
            csv_f64(r.gamma),
            csv_opt(r.c1),
            csv_opt(r.c2),
            csv_opt(r.c3),
            csv_opt(r.c4),
            csv_opt(r.c5),
            csv_opt(r.c6),
            csv_opt(r.c_tr),
            csv_opt(r.c_hs),
            csv_opt(r.prim_constant),
            csv_opt(r.lower_bound),
            csv_f64(r.quadrature_tol),
        ]);
        table_rows.push(vec![
            table_f64(r.gamma),
            table_opt(r.c1),
            table_opt(r.c2),
            table_opt(r.c3),
            table_opt(r.c4),
            table_opt(r.c5),
            table_opt(r.c6),
            table_opt(r.c_tr),
            table_opt(r.c_hs),
            table_opt(r.prim_constant),
            table_opt(r.lower_bound),
        ]);
    }
    out_dir
        .write_text("constants.csv", &csv.finish())
        .map_err(|e| e.to_string())?;

    print_table(
        &[
            "gamma",
            "c1",
            "c2",
            "c3",
            "c4",
            "c5",
            "c6",
            "C_tr",
            "C_HS",
            "GammaZeta",
            "lower",
        ],
        &table_rows,
    );
    Ok(0)
}
