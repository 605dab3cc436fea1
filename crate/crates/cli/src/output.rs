//! CSV and JSON writers with fixed formatting.

use std::io::Write;

use crate::commands::{Cell, Report};
use crate::config::Format;

/// `v` with 12 significant digits in scientific notation.
pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.11e}")
    } else {
        format!("{v}")
    }
}

fn format_cell(c: &Cell) -> String {
    match c {
        Cell::Num(v) => format_number(*v),
        Cell::Text(s) => s.clone(),
    }
}

pub fn write_csv<W: Write>(report: &Report, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{}", report.table.columns.join(","))?;
    for row in &report.table.rows {
        let line: Vec<String> = row.iter().map(format_cell).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_json<W: Write>(report: &Report, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)
}

pub fn render(report: &Report, format: Format) -> String {
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(report, &mut buf),
        Format::Json => write_json(report, &mut buf),
    }
    .expect("writing to memory");
    String::from_utf8(buf).expect("utf-8 output")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(1.0), "1.00000000000e0");
        assert_eq!(format_number(-0.000123456789012345), "-1.23456789012e-4");
        assert_eq!(format_number(f64::NAN), "NaN");
    }
}
