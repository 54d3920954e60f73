use std::path::Path;

use crate::error::{Error, Result};
use crate::solver::NormRecord;

use super::atomic_write;

pub const NORM_CSV_HEADER: &str = "t,p,k1,k2,k3,value";

/// Exponents print as `inf` or in shortest round-trip form.
pub fn format_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p:?}")
    }
}

/// 17 significant digits, enough to recover any `f64`.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn norm_csv_string(records: &[NormRecord]) -> String {
    let mut s = String::with_capacity(64 * (records.len() + 1));
    s.push_str(NORM_CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            format_real(r.t),
            format_p(r.p),
            r.k[0],
            r.k[1],
            r.k[2],
            format_real(r.value)
        ));
    }
    s
}

/// Writes via a temporary file and rename.
pub fn write_norm_csv(records: &[NormRecord], path: &Path) -> Result<()> {
    atomic_write(path, norm_csv_string(records).as_bytes())
}

pub fn read_norm_csv(path: &Path) -> Result<Vec<NormRecord>> {
    let text = std::fs::read_to_string(path)?;
    parse_norm_csv(&text, path)
}

/// Parses norm CSV text; `path` only labels errors. Row numbers count data
/// rows from 1.
pub fn parse_norm_csv(text: &str, path: &Path) -> Result<Vec<NormRecord>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let err = |row: usize, msg: String| Error::Csv { path: path.to_path_buf(), row, msg };
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| err(0, e.to_string()))?;
    if header.iter().collect::<Vec<_>>().join(",") != NORM_CSV_HEADER {
        return Err(err(0, format!("header must be {NORM_CSV_HEADER:?}")));
    }
    let mut out = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| err(row, e.to_string()))?;
        if rec.len() != 6 {
            return Err(err(row, format!("expected 6 fields, got {}", rec.len())));
        }
        let real = |j: usize, name: &str| -> Result<f64> {
            rec[j].trim().parse::<f64>().map_err(|_| err(row, format!("{name}: not a number: {:?}", &rec[j])))
        };
        let order = |j: usize| -> Result<u32> {
            rec[j].trim().parse::<u32>().map_err(|_| err(row, format!("k{}: not an order: {:?}", j - 1, &rec[j])))
        };
        let p = real(1, "p")?;
        if !(p >= 1.0) {
            return Err(err(row, format!("p = {p} is below 1")));
        }
        out.push(NormRecord { t: real(0, "t")?, p, k: [order(2)?, order(3)?, order(4)?], value: real(5, "value")? });
    }
    Ok(out)
}
