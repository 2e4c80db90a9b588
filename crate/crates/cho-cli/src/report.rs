//! Report rows and their CSV/JSON serializations.
//!
//! Numbers are written with 12 significant digits in both formats, so a CSV
//! and a JSON file of the same run carry identical values and a rerun with
//! the same spec produces the same bytes.

use std::io::{Read, Write};

use crate::config::OutputFormat;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Num(v) => Some(v),
            Cell::Int(v) => Some(v as f64),
            _ => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_sig12(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(t) => t.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            // The rendered digits, re-parsed: the JSON value equals the CSV one.
            Cell::Num(v) if v.is_finite() => {
                let rounded: f64 = format_sig12(*v).parse().expect("formatted number parses");
                serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
            }
            Cell::Num(v) => Value::String(format_sig12(*v)),
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(t) => Value::String(t.clone()),
            Cell::Empty => Value::Null,
        }
    }

    /// Inverse of the CSV rendering.
    fn parse(text: &str) -> Cell {
        if text.is_empty() {
            Cell::Empty
        } else if let Ok(v) = text.parse::<i64>() {
            Cell::Int(v)
        } else if let Ok(v) = text.parse::<f64>() {
            Cell::Num(v)
        } else if let Ok(b) = text.parse::<bool>() {
            Cell::Bool(b)
        } else {
            Cell::Text(text.to_string())
        }
    }
}

/// `v` with 12 significant digits: fixed notation for magnitudes in
/// [1e-5, 1e12), scientific otherwise. Infinities print as `inf`/`-inf`.
pub fn format_sig12(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    // Round first, then read the exponent off the rounded value so that
    // 9.9999999999996 becomes 10.0000000000 rather than 9.99999999999+1.
    let sci = format!("{v:.11e}");
    let exponent: i32 = sci.split_once('e').and_then(|(_, e)| e.parse().ok()).expect("scientific format");
    if (-5..12).contains(&exponent) {
        let decimals = (11 - exponent) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}

/// One output row: values in the owning table's column order.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub cells: Vec<Cell>,
}

/// A homogeneous set of rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn get(&self, row: usize, name: &str) -> Option<&Cell> {
        self.column(name).map(|c| &self.rows[row].cells[c])
    }

    pub fn read_csv(reader: impl Read) -> Result<Self, CliError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
        let columns: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        let mut table = Table::new(columns);
        for record in rdr.records() {
            let cells = record?.iter().map(Cell::parse).collect();
            table.rows.push(ReportRow { cells });
        }
        Ok(table)
    }
}

/// Writes `table` in `format`. Zero rows give a header-only CSV or `[]`.
pub fn emit_table(table: &Table, format: OutputFormat, out: &mut impl Write) -> Result<(), CliError> {
    for row in &table.rows {
        if row.cells.len() != table.columns.len() {
            return Err(CliError::Report(format!(
                "row has {} cells for {} columns",
                row.cells.len(),
                table.columns.len()
            )));
        }
    }
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut *out);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.cells.iter().map(Cell::render))?;
            }
            w.flush().map_err(|e| CliError::Io("output".into(), e))?;
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|row| {
                    let map: serde_json::Map<String, serde_json::Value> =
                        table.columns.iter().cloned().zip(row.cells.iter().map(Cell::to_json)).collect();
                    serde_json::Value::Object(map)
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rows).map_err(|e| CliError::Report(e.to_string()))?;
            out.write_all(b"\n").map_err(|e| CliError::Io("output".into(), e))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_sig12(493.48163345), "493.481633450");
        assert_eq!(format_sig12(0.5), "0.500000000000");
        assert_eq!(format_sig12(-6.0366917844), "-6.03669178440");
        assert_eq!(format_sig12(2.2775580583e-5), "0.0000227755805830");
        assert_eq!(format_sig12(2.2775580583e-6), "2.27755805830e-6");
        assert_eq!(format_sig12(3.0e-7), "3.00000000000e-7");
        assert_eq!(format_sig12(9.99999999999996), "10.0000000000");
        assert_eq!(format_sig12(f64::INFINITY), "inf");
        assert_eq!(format_sig12(0.0), "0");
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = Table::new(vec!["a".into(), "b".into()]);
        let mut buf = Vec::new();
        emit_table(&t, OutputFormat::Csv, &mut buf).unwrap();
        assert_eq!(buf, b"a,b\n");
        buf.clear();
        emit_table(&t, OutputFormat::Json, &mut buf).unwrap();
        assert_eq!(buf, b"[]\n");
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let mut t = Table::new(vec!["a".into()]);
        t.rows.push(ReportRow { cells: vec![Cell::Int(1), Cell::Int(2)] });
        assert!(emit_table(&t, OutputFormat::Csv, &mut Vec::new()).is_err());
    }

    #[test]
    fn text_with_commas_is_quoted() {
        let mut t = Table::new(vec!["error".into()]);
        t.rows.push(ReportRow { cells: vec![Cell::Text("a, b".into())] });
        let mut buf = Vec::new();
        emit_table(&t, OutputFormat::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "error\n\"a, b\"\n");
        let back = Table::read_csv(&buf[..]).unwrap();
        assert_eq!(back.rows[0].cells[0], Cell::Text("a, b".into()));
    }
}
