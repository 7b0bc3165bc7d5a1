//! Ray CSV files and JSON helpers for the reports.

use std::path::Path;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::algebra::ComplexRational;
use crate::quiver::ExactMatrix;
use crate::raytrace::Ray;

pub const CSV_HEADER: [&str; 9] = ["sigma", "x1", "x2", "x3", "p1", "p2", "p3", "tau", "eikonal_residual"];

/// One output row, in header order.
pub type RayRow = [f64; 9];

pub fn ray_rows(ray: &Ray) -> Vec<RayRow> {
    ray.samples()
        .iter()
        .zip(ray.residuals())
        .map(|(s, r)| [s.sigma, s.x[0], s.x[1], s.x[2], s.p[0], s.p[1], s.p[2], s.tau, *r])
        .collect()
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn ray_file_name(index: usize) -> String {
    format!("ray_{index:03}.csv")
}

pub fn write_ray_csv(path: &Path, ray: &Ray) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CSV_HEADER)?;
    for row in ray_rows(ray) {
        w.write_record(row.iter().map(|v| format_value(*v)))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, thiserror::Error)]
pub enum CsvReadError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
}

/// Reads a file written by [`write_ray_csv`].
pub fn read_ray_csv(path: &Path) -> Result<Vec<RayRow>, CsvReadError> {
    let mut r = csv::Reader::from_path(path)?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_HEADER {
        return Err(CsvReadError::Header(header));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 9 {
            return Err(CsvReadError::Row {
                line,
                message: format!("expected 9 columns, found {}", rec.len()),
            });
        }
        let mut row = [0.0; 9];
        for (slot, field) in row.iter_mut().zip(rec.iter()) {
            *slot = field.parse().map_err(|e| CsvReadError::Row {
                line,
                message: format!("`{field}`: {e}"),
            })?;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Integers stay JSON integers; other values are exact strings.
pub fn exact_value(x: &ComplexRational) -> Value {
    if x.is_real() && x.re().is_integer() {
        if let Some(n) = x.re().to_integer().to_i64() {
            return json!(n);
        }
    }
    json!(x.to_string())
}

pub fn exact_matrix_json(m: &ExactMatrix) -> Value {
    Value::Array(
        m.row_iter()
            .map(|r| Value::Array(r.iter().map(exact_value).collect()))
            .collect(),
    )
}

pub fn complex_value(z: Complex64) -> Value {
    if z.im == 0.0 {
        json!(z.re)
    } else {
        json!({ "re": z.re, "im": z.im })
    }
}

pub fn complex_matrix_json(m: &nalgebra::DMatrix<Complex64>) -> Value {
    Value::Array(
        m.row_iter()
            .map(|r| Value::Array(r.iter().map(|z| complex_value(*z)).collect()))
            .collect(),
    )
}
