//! Deterministic emission: JSON with 17 significant digits, CSV rows,
//! aligned tables with 9 significant digits.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;

/// serde_json formatter printing every finite f64 with 17 significant digits
/// so byte-identical reruns don't depend on shortest-roundtrip formatting.
struct Sig17;

impl serde_json::ser::Formatter for Sig17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> io::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17);
    value
        .serialize(&mut ser)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    Ok(String::from_utf8(out).expect("serde_json emits utf-8"))
}

pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(path: &Path) -> io::Result<Self> {
        fs::create_dir_all(path)?;
        Ok(Self {
            root: path.to_path_buf(),
        })
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> io::Result<PathBuf> {
        let path = self.root.join(name);
        fs::write(&path, to_json_string(value)? + "\n")?;
        Ok(path)
    }

    pub fn write_text(&self, name: &str, text: &str) -> io::Result<PathBuf> {
        let path = self.root.join(name);
        fs::write(&path, text)?;
        Ok(path)
    }
}

/// Minimal CSV assembly; all emitted fields are numeric or bare identifiers,
/// so no quoting is needed.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut buf = header.join(",");
        buf.push('\n');
        Self { buf }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// f64 field for CSV/JSON-mirroring output: 17 significant digits.
pub fn csv_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        String::from("")
    }
}

pub fn csv_opt(v: Option<f64>) -> String {
    v.map(csv_f64).unwrap_or_default()
}

/// f64 for the human-readable tables: 9 significant digits.
pub fn table_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.8e}")
    } else {
        String::from("-")
    }
}

pub fn table_opt(v: Option<f64>) -> String {
    v.map(table_f64).unwrap_or_else(|| String::from("-"))
}

/// Print an aligned two-dimensional table to stdout.
pub fn print_table(header: &[&str], rows: &[Vec<String>]) {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut line = String::new();
    for (i, h) in header.iter().enumerate() {
        line.push_str(&format!("{:>width$}  ", h, width = widths[i]));
    }
    println!("{}", line.trim_end());
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate().take(cols) {
            line.push_str(&format!("{:>width$}  ", cell, width = widths[i]));
        }
        println!("{}", line.trim_end());
    }
}
