//! Distance-matrix I/O: CSV (n rows of n comma-separated reals) and a JSON
//! object `{"n": int, "dist": [[...]], "labels": [...]}`.
//!
//! JSON round-trips are bit-exact: floats are written in shortest-roundtrip
//! form and parsed back to the identical `f64`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metric::{FiniteMetricSpace, MetricError, Provenance, Tolerances};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv parse error at line {line}, column {column}: {message}")]
    Csv { line: usize, column: usize, message: String },
    #[error("json parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    dist: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

/// Parse an `n × n` CSV matrix. Errors carry 1-based line and column.
pub fn matrix_from_csv(text: &str) -> Result<Vec<Vec<f64>>, IoError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (colno, cell) in line.split(',').enumerate() {
            let v: f64 = cell.trim().parse().map_err(|e| IoError::Csv {
                line: lineno + 1,
                column: colno + 1,
                message: format!("{e}: {:?}", cell.trim()),
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn matrix_to_csv(space: &FiniteMetricSpace) -> String {
    let mut out = String::new();
    for i in 0..space.n_points() {
        let row: Vec<String> = space.row(i).iter().map(|d| format!("{d}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn space_from_json(text: &str, tol: &Tolerances) -> Result<FiniteMetricSpace, IoError> {
    let parsed: MatrixJson = serde_json::from_str(text)?;
    let prov = parsed.provenance.unwrap_or_default();
    if parsed.dist.len() != parsed.n {
        return Err(MetricError::NotSquare {
            row: 0,
            got: parsed.dist.len(),
            expected: parsed.n,
        }
        .into());
    }
    Ok(FiniteMetricSpace::from_matrix(&parsed.dist, parsed.labels, prov, tol)?)
}

pub fn space_to_json(space: &FiniteMetricSpace) -> String {
    let repr = MatrixJson {
        n: space.n_points(),
        dist: space.matrix(),
        labels: space.labels().map(|l| l.to_vec()),
        provenance: Some(space.provenance().clone()),
    };
    let mut s = serde_json::to_string(&repr).expect("matrix serialization cannot fail");
    s.push('\n');
    s
}

/// Load a space from a `.csv` or `.json` path, deciding by extension
/// (anything other than `.json` is treated as CSV).
pub fn load_space(path: &str, tol: &Tolerances) -> Result<FiniteMetricSpace, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.to_string(),
        source,
    })?;
    if path.ends_with(".json") {
        space_from_json(&text, tol)
    } else {
        let matrix = matrix_from_csv(&text)?;
        Ok(FiniteMetricSpace::from_matrix(&matrix, None, Provenance::Loaded, tol)?)
    }
}
