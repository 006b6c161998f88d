//! Validated finite metric spaces and their elementary invariants.
//!
//! A [`FiniteMetricSpace`] is a dense symmetric distance matrix that has been
//! checked against the metric axioms (zero diagonal, symmetry, nonnegativity,
//! triangle inequality within a tolerance). All invariants in this crate are
//! computed on top of it, whether the matrix was loaded from a file or
//! sampled from a model space.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spaceform::ModelSpaceSpec;

/// Numerical slacks used across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Additive slack allowed when checking the triangle inequality.
    pub tol_metric: f64,
    /// Slack for comparing computed invariant values.
    pub tol_value: f64,
    /// Residual target for root finding.
    pub tol_root: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_metric: 1e-9,
            tol_value: 1e-9,
            tol_root: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<(), MetricError> {
        if self.tol_metric > 0.0 && self.tol_value > 0.0 && self.tol_root > 0.0 {
            Ok(())
        } else {
            Err(MetricError::BadTolerance)
        }
    }
}

/// Where a space came from; embedded in reports so runs are reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Provenance {
    Loaded,
    SampledFrom { spec: ModelSpaceSpec, seed: u64 },
}

impl Default for Provenance {
    fn default() -> Self {
        Provenance::Loaded
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MetricError {
    #[error("matrix is not square: row {row} has {got} entries, expected {expected}")]
    NotSquare { row: usize, got: usize, expected: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("entry ({i},{j}) is not finite")]
    NonFinite { i: usize, j: usize },
    #[error("diagonal entry {i} is {value}, expected 0")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("negative distance {value} at ({i},{j})")]
    NegativeDistance { i: usize, j: usize, value: f64 },
    #[error("asymmetric pair ({i},{j}): {forward} vs {backward}")]
    NonSymmetric { i: usize, j: usize, forward: f64, backward: f64 },
    #[error("triangle violation: d({i},{j}) exceeds d({i},{k}) + d({k},{j}) by {defect}")]
    TriangleViolation { i: usize, j: usize, k: usize, defect: f64 },
    #[error("operation needs at least {needed} points, space has {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("labels length {got} does not match point count {expected}")]
    BadLabels { got: usize, expected: usize },
    #[error("tolerances must be strictly positive")]
    BadTolerance,
}

/// A finite metric space held as a dense `n × n` distance matrix.
///
/// Immutable after construction; operations are pure and safe to run from
/// parallel workers.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<f64>, // row-major n*n
    labels: Option<Vec<String>>,
    provenance: Provenance,
}

impl FiniteMetricSpace {
    /// Validate a dense matrix against the metric axioms and wrap it.
    ///
    /// Axioms are checked in a fixed order (diagonal, nonnegativity,
    /// symmetry, triangle inequality) and the first violating entry or
    /// triple is reported. The triangle inequality is allowed an additive
    /// slack of `tol.tol_metric`, since sampled model spaces carry
    /// rounding-scale defects.
    pub fn from_matrix(
        matrix: &[Vec<f64>],
        labels: Option<Vec<String>>,
        provenance: Provenance,
        tol: &Tolerances,
    ) -> Result<Self, MetricError> {
        tol.validate()?;
        let n = matrix.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::NotSquare { row, got: r.len(), expected: n });
            }
        }
        if let Some(ref l) = labels {
            if l.len() != n {
                return Err(MetricError::BadLabels { got: l.len(), expected: n });
            }
        }
        for (i, row) in matrix.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(MetricError::NonFinite { i, j });
                }
            }
        }
        for (i, row) in matrix.iter().enumerate() {
            if row[i] != 0.0 {
                return Err(MetricError::NonzeroDiagonal { i, value: row[i] });
            }
        }
        for (i, row) in matrix.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v < 0.0 {
                    return Err(MetricError::NegativeDistance { i, j, value: v });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(MetricError::NonSymmetric {
                        i,
                        j,
                        forward: matrix[i][j],
                        backward: matrix[j][i],
                    });
                }
            }
        }
        if let Some(v) = first_triangle_violation(matrix, tol.tol_metric) {
            return Err(v);
        }
        let mut dist = Vec::with_capacity(n * n);
        for row in matrix {
            dist.extend_from_slice(row);
        }
        Ok(FiniteMetricSpace { n, dist, labels, provenance })
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Largest pairwise distance; 0 for a single point.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0_f64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                best = best.max(self.distance(i, j));
            }
        }
        best
    }

    /// Smallest eccentricity `min_i max_j d(i,j)` together with an attaining
    /// center; ties go to the smallest index so results are reproducible.
    pub fn radius(&self) -> (f64, usize) {
        let mut best = f64::INFINITY;
        let mut center = 0;
        for i in 0..self.n {
            let ecc = self.row(i).iter().cloned().fold(0.0_f64, f64::max);
            if ecc < best {
                best = ecc;
                center = i;
            }
        }
        if self.n == 1 {
            return (0.0, 0);
        }
        (best, center)
    }

    /// Excess: `min_{p<q} max_x (d(p,x) + d(x,q) − d(p,q))`, by exhaustive
    /// triple scan. O(n³), parallelized over `p`.
    pub fn excess(&self) -> Result<f64, MetricError> {
        if self.n < 2 {
            return Err(MetricError::TooFewPoints { needed: 2, got: self.n });
        }
        let per_p: Vec<f64> = (0..self.n)
            .into_par_iter()
            .map(|p| {
                let rp = self.row(p);
                let mut best = f64::INFINITY;
                for q in p + 1..self.n {
                    let rq = self.row(q);
                    let dpq = rp[q];
                    let mut worst = 0.0_f64;
                    for x in 0..self.n {
                        worst = worst.max(rp[x] + rq[x] - dpq);
                    }
                    best = best.min(worst);
                }
                best
            })
            .collect();
        Ok(per_p.into_iter().fold(f64::INFINITY, f64::min))
    }

    /// Covering proxy: the largest nearest-neighbor distance in the sample.
    /// Reported next to sampled-space verdicts, since discretization
    /// systematically underestimates maxima.
    pub fn max_nearest_neighbor(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &d)| d)
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0_f64, f64::max)
    }

    /// Same space with every distance multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> FiniteMetricSpace {
        assert!(c > 0.0 && c.is_finite(), "scale factor must be positive");
        FiniteMetricSpace {
            n: self.n,
            dist: self.dist.iter().map(|d| d * c).collect(),
            labels: self.labels.clone(),
            provenance: self.provenance.clone(),
        }
    }
}

/// First triple (lexicographic in `(i, j, k)`) violating
/// `d(i,j) ≤ d(i,k) + d(k,j) + slack`, if any.
fn first_triangle_violation(m: &[Vec<f64>], slack: f64) -> Option<MetricError> {
    let n = m.len();
    let scan_row = |i: usize| -> Option<(usize, usize, usize, f64)> {
        for j in i + 1..n {
            let d = m[i][j];
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let defect = d - m[i][k] - m[k][j];
                if defect > slack {
                    return Some((i, j, k, defect));
                }
            }
        }
        None
    };
    let hit = if n >= 160 {
        (0..n)
            .into_par_iter()
            .filter_map(scan_row)
            .min_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)))
    } else {
        (0..n).filter_map(scan_row).next()
    };
    hit.map(|(i, j, k, defect)| MetricError::TriangleViolation { i, j, k, defect })
}
