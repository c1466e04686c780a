use std::fs;
use std::io::Write;
use std::path::Path;

use super::SweepRow;
use crate::error::{Error, Result};

const SIGNIFICANT_DIGITS: i32 = 15;

/// Positional decimal rendering with 15 significant digits, e.g.
/// `0.0292468775639055` or `1266.48006500917`.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.*}", (SIGNIFICANT_DIGITS - 1) as usize, 0.0);
    }
    // exponent after rounding, so 99.99999999999999 counts as 1e2
    let sci = format!("{:.*e}", (SIGNIFICANT_DIGITS - 1) as usize, x);
    let exponent: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = (SIGNIFICANT_DIGITS - 1 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Writes header and rows as comma-separated lines with LF endings.
pub fn write_csv<W: Write>(header: &[String], rows: &[SweepRow], mut out: W) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let fields = row.fields();
        if fields.len() != header.len() {
            return Err(Error::Config(format!(
                "row has {} fields but header has {}",
                fields.len(),
                header.len()
            )));
        }
        if let Some(v) = fields.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("CSV field {v}")));
        }
        let line: Vec<String> = fields.into_iter().map(format_value).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

/// Renders the whole file in memory first, so nothing is created on error.
pub fn emit_csv(header: &[String], rows: &[SweepRow], destination: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_csv(header, rows, &mut buf)?;
    fs::write(destination, buf)?;
    Ok(())
}
