//! Plain-text matrix exchange format used by the CLI:
//! a header line `dim n` followed by `n` rows of `n` whitespace-separated
//! decimal entries. Symmetry is enforced by averaging `(M + Mᵀ)/2`; the
//! measured asymmetry is reported so callers can warn past 1e-9.

use super::{MatrixError, SymmetricOperator};

/// Threshold above which callers should surface an asymmetry warning.
pub const ASYMMETRY_WARN: f64 = 1e-9;

#[derive(Debug)]
pub struct ParsedMatrix {
    pub operator: SymmetricOperator,
    /// Largest `|m_ij - m_ji|` seen before symmetrization.
    pub asymmetry: f64,
}

pub fn parse_matrix_text(text: &str) -> Result<ParsedMatrix, MatrixError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| MatrixError::TextFormat("empty input".into()))?;
    let mut parts = header.split_whitespace();
    match parts.next() {
        Some("dim") => {}
        other => {
            return Err(MatrixError::TextFormat(format!(
                "expected header 'dim n', got {:?}",
                other.unwrap_or("")
            )))
        }
    }
    let dim: usize = parts
        .next()
        .ok_or_else(|| MatrixError::TextFormat("missing dimension in header".into()))?
        .parse()
        .map_err(|e| MatrixError::TextFormat(format!("bad dimension: {e}")))?;
    if dim == 0 {
        return Err(MatrixError::EmptyMatrix);
    }
    if parts.next().is_some() {
        return Err(MatrixError::TextFormat("trailing tokens in header".into()));
    }

    let mut entries = Vec::with_capacity(dim * dim);
    for (row_idx, line) in lines.enumerate() {
        if row_idx >= dim {
            return Err(MatrixError::TextFormat(format!(
                "more than {dim} data rows"
            )));
        }
        let row: Result<Vec<f64>, _> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|e| MatrixError::TextFormat(format!("row {}: {e}", row_idx + 1)))
            })
            .collect();
        let row = row?;
        if row.len() != dim {
            return Err(MatrixError::TextFormat(format!(
                "row {} has {} entries, expected {dim}",
                row_idx + 1,
                row.len()
            )));
        }
        entries.extend(row);
    }
    if entries.len() != dim * dim {
        return Err(MatrixError::TextFormat(format!(
            "got {} rows, expected {dim}",
            entries.len() / dim
        )));
    }

    let (operator, asymmetry) = SymmetricOperator::from_raw(dim, entries)?;
    Ok(ParsedMatrix {
        operator,
        asymmetry,
    })
}

pub fn write_matrix_text(m: &SymmetricOperator) -> String {
    let n = m.dim();
    let mut out = format!("dim {n}\n");
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{:e}", m.get(i, j)));
        }
        out.push('\n');
    }
    out
}
