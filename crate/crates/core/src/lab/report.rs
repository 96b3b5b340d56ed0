//! JSON and CSV emission of check reports.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::inequalities::CheckReport;

/// CSV columns, identical to the serialized report field names.
pub const CSV_HEADER: [&str; 10] = [
    "ineq",
    "params",
    "radius",
    "lhs",
    "rhs",
    "margin",
    "relative_margin",
    "witness_z",
    "hypothesis_ok",
    "notes",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::usage(format!("unknown format '{other}' (json or csv)"))),
        }
    }
}

#[derive(Serialize)]
struct Row<'a> {
    ineq: &'a str,
    params: String,
    radius: f64,
    lhs: f64,
    rhs: f64,
    margin: f64,
    relative_margin: f64,
    witness_z: String,
    hypothesis_ok: bool,
    notes: &'a str,
}

fn to_json_text<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    serde_json::to_string(value).map_err(|e| Error::usage(format!("serialization failed: {e}")))
}

pub fn to_json(reports: &[CheckReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(|e| Error::usage(format!("serialization failed: {e}")))
}

pub fn to_csv(reports: &[CheckReport]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(reports, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

/// One header row, then one row per report. `params` holds the parameter
/// JSON and `witness_z` the pair `[re,im]`.
pub fn write_csv<W: Write>(reports: &[CheckReport], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::usage(format!("csv output failed: {e}"));
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    writer.write_record(CSV_HEADER).map_err(io)?;
    for r in reports {
        let row = Row {
            ineq: r.ineq.as_str(),
            params: to_json_text(&r.params)?,
            radius: r.radius,
            lhs: r.lhs,
            rhs: r.rhs,
            margin: r.margin,
            relative_margin: r.relative_margin,
            witness_z: to_json_text(&r.witness_z)?,
            hypothesis_ok: r.hypothesis_ok,
            notes: &r.notes,
        };
        writer.serialize(row).map_err(io)?;
    }
    writer.flush().map_err(|e| Error::usage(format!("csv output failed: {e}")))
}

pub fn render(reports: &[CheckReport], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(reports),
        Format::Csv => to_csv(reports),
    }
}
