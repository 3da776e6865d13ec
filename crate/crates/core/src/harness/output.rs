//! CSV and JSON emission.
//!
//! Result rows use the fixed header `mode,n,k,p_success,k_star,threshold`.
//! Floats are written with 17 significant digits; a missing `k_star` is an
//! empty CSV field and `null` in JSON.

use std::io::Write;

use serde::Serialize;

use super::config::Mode;
use super::sweep::SweepPoint;
use crate::error::{Error, Result};
use crate::oracle::ScanEntry;

pub const CSV_HEADER: [&str; 6] = ["mode", "n", "k", "p_success", "k_star", "threshold"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!(
                "unknown format `{other}` (expected csv or json)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub mode: Mode,
    pub n: u64,
    pub k: u64,
    pub p_success: f64,
    pub k_star: Option<u64>,
    pub threshold: f64,
}

impl ResultRow {
    /// Row reporting `k*` itself, or `max_steps` when it was not reached.
    pub fn from_point(mode: Mode, threshold: f64, max_steps: u64, point: &SweepPoint) -> Self {
        Self {
            mode,
            n: point.n_elements,
            k: point.k_star.unwrap_or(max_steps),
            p_success: point.probability_at_k_star,
            k_star: point.k_star,
            threshold,
        }
    }

    fn csv_fields(&self) -> [String; 6] {
        [
            self.mode.to_string(),
            self.n.to_string(),
            self.k.to_string(),
            format_float(self.p_success),
            self.k_star.map(|k| k.to_string()).unwrap_or_default(),
            format_float(self.threshold),
        ]
    }
}

/// `d.dddddddddddddddde±x`: 17 significant digits, enough to round-trip.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: "<output>".into(),
            source,
        },
        other => Error::Serialize(format!("{other:?}")),
    }
}

pub fn write_rows<W: Write>(rows: &[ResultRow], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            for row in rows {
                w.write_record(row.csv_fields()).map_err(csv_err)?;
            }
            w.flush().map_err(|source| Error::Io {
                path: "<output>".into(),
                source,
            })
        }
        Format::Json => write_json(rows, out),
    }
}

pub fn rows_to_string(rows: &[ResultRow], format: Format) -> Result<String> {
    let mut buf = Vec::new();
    write_rows(rows, format, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Serialize(e.to_string()))
}

pub const SCAN_HEADER: [&str; 5] = ["k", "qubit", "purity", "entangled", "predicted_product"];

#[derive(Serialize)]
struct ScanRecord {
    n: u64,
    k: u64,
    qubit: usize,
    purity: f64,
    entangled: bool,
    predicted_product: bool,
}

pub fn write_scan<W: Write>(n: u64, entries: &[ScanEntry], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["n"];
            header.extend(SCAN_HEADER);
            w.write_record(header).map_err(csv_err)?;
            for e in entries {
                w.write_record([
                    n.to_string(),
                    e.k.to_string(),
                    e.qubit.to_string(),
                    format_float(e.purity),
                    e.entangled.to_string(),
                    e.predicted_product.to_string(),
                ])
                .map_err(csv_err)?;
            }
            w.flush().map_err(|source| Error::Io {
                path: "<output>".into(),
                source,
            })
        }
        Format::Json => {
            let records: Vec<ScanRecord> = entries
                .iter()
                .map(|e| ScanRecord {
                    n,
                    k: e.k,
                    qubit: e.qubit,
                    purity: e.purity,
                    entangled: e.entangled,
                    predicted_product: e.predicted_product,
                })
                .collect();
            write_json(&records, out)
        }
    }
}

pub fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Error::Serialize(e.to_string()))?;
    writeln!(out).map_err(|source| Error::Io {
        path: "<output>".into(),
        source,
    })
}
