//! Constant-curvature model spaces and their geometry.
//!
//! Ambient realizations: for curvature `k > 0` points live on the radius
//! `1/√k` sphere in `ℝ^{n+1}`; for `k = 0` in `ℝ^n`; for `k < 0` on the
//! upper hyperboloid sheet `⟨x,x⟩_M = 1/k` in Minkowski `ℝ^{n,1}`. These
//! give closed-form geodesic distances and let facet projections reduce to
//! linear algebra.

pub mod double;
pub mod sample;
pub mod simplex;
pub mod triangle;
pub mod trig;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom;

pub use double::{double_distance, double_radius, DoubleGeometry, DoubleRadius};
pub use sample::sample_model_space;
pub use simplex::{inradius, regular_simplex, solve_kn, solve_kn_in, SimplexGeometry};
pub use triangle::{comparison_triangle, ComparisonTriangle};
pub use trig::law_of_cosines;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpaceformError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("points belong to different model-space specs")]
    SpecMismatch,
    #[error("triangle not realizable: {0}")]
    NotRealizable(String),
    #[error("no sign change for r(n,k) - 1/2 on [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },
    #[error("inradius self-check failed: closed form {closed} vs minimization {minimized}")]
    SelfCheckFailed { closed: f64, minimized: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

fn domain(msg: impl Into<String>) -> SpaceformError {
    SpaceformError::Domain(msg.into())
}

/// The model families realized by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Round sphere `S_k^n`, `k > 0`.
    Sphere,
    /// Closed metric ball `D_k^n(R)` in `S_k^n`, with the restricted metric.
    Ball,
    /// Projective space `S_k^n / ±`, `k > 0`.
    Projective,
    /// Segment `[0, L]`; `R` stores the length `L`.
    Interval,
    /// Regular geodesic n-simplex with circumradius 1 in `S_k^n`.
    Simplex,
    /// Two copies of the simplex glued along their boundary.
    DoubleSimplex,
}

impl ModelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::Sphere => "sphere",
            ModelKind::Ball => "ball",
            ModelKind::Projective => "projective",
            ModelKind::Interval => "interval",
            ModelKind::Simplex => "simplex",
            ModelKind::DoubleSimplex => "double_simplex",
        }
    }
}

/// Curvature ceiling for the simplex constructions: the regular inscribed
/// simplex in the unit ball is unique below `(π/4)²`.
pub const SIMPLEX_K_LIMIT: f64 = std::f64::consts::FRAC_PI_4 * std::f64::consts::FRAC_PI_4;

/// Upper end of the domain of `r(n,·)`; the construction degenerates at
/// `(π/2)²` where the circumscribed ball becomes a hemisphere.
pub const INRADIUS_K_LIMIT: f64 = std::f64::consts::FRAC_PI_2 * std::f64::consts::FRAC_PI_2;

/// Description of a model space: which family, dimension, curvature, and the
/// radius/length parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpaceSpec {
    pub kind: ModelKind,
    pub n: usize,
    pub k: f64,
    #[serde(rename = "R")]
    pub r: f64,
}

impl ModelSpaceSpec {
    pub fn sphere(n: usize, k: f64) -> Self {
        ModelSpaceSpec { kind: ModelKind::Sphere, n, k, r: 0.0 }
    }

    pub fn projective(n: usize, k: f64) -> Self {
        ModelSpaceSpec { kind: ModelKind::Projective, n, k, r: 0.0 }
    }

    pub fn ball(n: usize, k: f64, r: f64) -> Self {
        ModelSpaceSpec { kind: ModelKind::Ball, n, k, r }
    }

    pub fn interval(length: f64) -> Self {
        ModelSpaceSpec { kind: ModelKind::Interval, n: 1, k: 0.0, r: length }
    }

    pub fn simplex(n: usize, k: f64) -> Self {
        ModelSpaceSpec { kind: ModelKind::Simplex, n, k, r: 1.0 }
    }

    pub fn double_simplex(n: usize, k: f64) -> Self {
        ModelSpaceSpec { kind: ModelKind::DoubleSimplex, n, k, r: 1.0 }
    }

    pub fn validate(&self) -> Result<(), SpaceformError> {
        if self.n == 0 {
            return Err(domain("dimension must be positive"));
        }
        if !self.k.is_finite() || !self.r.is_finite() {
            return Err(domain("curvature and radius must be finite"));
        }
        match self.kind {
            ModelKind::Sphere | ModelKind::Projective => {
                if self.k <= 0.0 {
                    return Err(domain(format!(
                        "{} requires k > 0, got {}",
                        self.kind.as_str(),
                        self.k
                    )));
                }
            }
            ModelKind::Ball => {
                if self.r <= 0.0 {
                    return Err(domain("ball requires R > 0"));
                }
                if self.k > 0.0 && self.r > std::f64::consts::PI / self.k.sqrt() {
                    return Err(domain(format!(
                        "ball radius {} exceeds π/√k = {}",
                        self.r,
                        std::f64::consts::PI / self.k.sqrt()
                    )));
                }
            }
            ModelKind::Interval => {
                if self.n != 1 {
                    return Err(domain("interval is one-dimensional"));
                }
                if self.r <= 0.0 {
                    return Err(domain("interval requires a positive length"));
                }
            }
            ModelKind::Simplex | ModelKind::DoubleSimplex => {
                if self.n < 2 {
                    return Err(domain("simplex requires n >= 2"));
                }
                if self.r != 1.0 {
                    return Err(domain("simplex constructions are normalized to circumradius 1"));
                }
                if self.k >= SIMPLEX_K_LIMIT {
                    return Err(domain(format!(
                        "simplex requires k < (π/4)² = {SIMPLEX_K_LIMIT}, got {}",
                        self.k
                    )));
                }
            }
        }
        Ok(())
    }

    /// Ambient coordinate dimension of points of this model.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            ModelKind::Interval => 1,
            _ => {
                if self.k == 0.0 {
                    self.n
                } else {
                    self.n + 1
                }
            }
        }
    }

    /// An upper bound for distances in the model (used for sanity checks).
    pub fn diameter_bound(&self) -> f64 {
        match self.kind {
            ModelKind::Sphere => std::f64::consts::PI / self.k.sqrt(),
            ModelKind::Projective => std::f64::consts::PI / (2.0 * self.k.sqrt()),
            ModelKind::Interval => self.r,
            ModelKind::Ball => 2.0 * self.r,
            // Same-copy pairs are bounded by the simplex diameter; the
            // double at most doubles it.
            ModelKind::Simplex => 4.0,
            ModelKind::DoubleSimplex => 8.0,
        }
    }
}

/// A point of a model space, stored in ambient coordinates.
///
/// `copy` distinguishes the two sheets of a double simplex and is 0
/// everywhere else.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelPoint {
    pub spec: ModelSpaceSpec,
    pub coords: Vec<f64>,
    #[serde(default)]
    pub copy: u8,
}

impl ModelPoint {
    /// Wrap coordinates after checking the ambient constraint of the model
    /// (unit-sphere norm, hyperboloid norm, interval range, ...).
    pub fn new(spec: ModelSpaceSpec, coords: Vec<f64>, copy: u8) -> Result<Self, SpaceformError> {
        spec.validate()?;
        if coords.len() != spec.ambient_dim() {
            return Err(domain(format!(
                "expected {} ambient coordinates, got {}",
                spec.ambient_dim(),
                coords.len()
            )));
        }
        if copy > 0 && spec.kind != ModelKind::DoubleSimplex {
            return Err(domain("copy tag is only meaningful on a double simplex"));
        }
        let p = ModelPoint { spec, coords, copy };
        p.check_on_model(1e-7)?;
        Ok(p)
    }

    pub(crate) fn new_unchecked(spec: ModelSpaceSpec, coords: Vec<f64>, copy: u8) -> Self {
        ModelPoint { spec, coords, copy }
    }

    fn check_on_model(&self, tol: f64) -> Result<(), SpaceformError> {
        let k = self.spec.k;
        match self.spec.kind {
            ModelKind::Interval => {
                let x = self.coords[0];
                if !(-tol..=self.spec.r + tol).contains(&x) {
                    return Err(domain(format!("interval point {x} outside [0, {}]", self.spec.r)));
                }
            }
            _ if k > 0.0 => {
                let want = 1.0 / k.sqrt();
                if (geom::norm(&self.coords) - want).abs() > tol * want.max(1.0) {
                    return Err(domain("point is not on the model sphere"));
                }
            }
            _ if k < 0.0 => {
                let q = geom::minkowski_dot(&self.coords, &self.coords);
                if (q - 1.0 / k).abs() > tol * (1.0 / -k).max(1.0)
                    || self.coords[self.coords.len() - 1] <= 0.0
                {
                    return Err(domain("point is not on the model hyperboloid"));
                }
            }
            _ => {
                if self.spec.kind == ModelKind::Ball
                    && geom::norm(&self.coords) > self.spec.r * (1.0 + tol) + tol
                {
                    return Err(domain("point is outside the ball"));
                }
            }
        }
        // Simplex membership additionally requires the point to lie in the
        // geodesic hull of the vertices.
        if matches!(self.spec.kind, ModelKind::Simplex | ModelKind::DoubleSimplex) {
            let geometry = simplex::build_simplex(self.spec.n, k)?;
            let lambda = geometry.barycentric(&self.coords)?;
            if lambda.iter().any(|&l| l < -1e-7) {
                return Err(domain("point is outside the simplex"));
            }
        }
        Ok(())
    }
}

/// Geodesic distance between two ambient coordinate vectors for curvature
/// `k` (positive: sphere of radius `1/√k`; zero: Euclidean; negative:
/// hyperboloid).
pub(crate) fn model_distance(k: f64, a: &[f64], b: &[f64]) -> f64 {
    if k > 0.0 {
        let rk = k.sqrt();
        let ua: Vec<f64> = geom::scale(a, rk);
        let ub: Vec<f64> = geom::scale(b, rk);
        geom::unit_angle(&ua, &ub) / rk
    } else if k == 0.0 {
        geom::dist_euclid(a, b)
    } else {
        let arg = (k * geom::minkowski_dot(a, b)).max(1.0);
        arg.acosh() / (-k).sqrt()
    }
}

/// Point at arc-parameter `t ∈ [0,1]` on the minimal geodesic from `a` to
/// `b` in the curvature-`k` ambient model. For `k > 0` the pair must not be
/// antipodal.
pub(crate) fn model_geodesic_point(k: f64, a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    if k == 0.0 {
        return geom::axpy(&geom::scale(a, 1.0 - t), t, b);
    }
    let d = model_distance(k, a, b);
    if k > 0.0 {
        let rk = k.sqrt();
        let theta = d * rk;
        if theta < 1e-12 {
            return a.to_vec();
        }
        let s = theta.sin();
        let ca = ((1.0 - t) * theta).sin() / s;
        let cb = (t * theta).sin() / s;
        geom::axpy(&geom::scale(a, ca), cb, b)
    } else {
        let s = (-k).sqrt();
        let theta = d * s;
        if theta < 1e-12 {
            return a.to_vec();
        }
        let sh = theta.sinh();
        let ca = ((1.0 - t) * theta).sinh() / sh;
        let cb = (t * theta).sinh() / sh;
        geom::axpy(&geom::scale(a, ca), cb, b)
    }
}

/// Geodesic distance between two points of the same model space.
///
/// Projective distance is the quotient `min(d, π/√k − d)` of the sphere
/// distance; double-simplex pairs delegate to [`double_distance`].
pub fn distance(p: &ModelPoint, q: &ModelPoint) -> Result<f64, SpaceformError> {
    if p.spec != q.spec {
        return Err(SpaceformError::SpecMismatch);
    }
    let k = p.spec.k;
    match p.spec.kind {
        ModelKind::Interval => Ok((p.coords[0] - q.coords[0]).abs()),
        ModelKind::Sphere | ModelKind::Ball | ModelKind::Simplex => {
            Ok(model_distance(k, &p.coords, &q.coords))
        }
        ModelKind::Projective => {
            let d = model_distance(k, &p.coords, &q.coords);
            Ok(d.min(std::f64::consts::PI / k.sqrt() - d))
        }
        ModelKind::DoubleSimplex => double::double_distance(p, q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn antipodal_sphere_points_at_pi() {
        let spec = ModelSpaceSpec::sphere(2, 1.0);
        let p = ModelPoint::new(spec, vec![0.0, 0.0, 1.0], 0).unwrap();
        let q = ModelPoint::new(spec, vec![0.0, 0.0, -1.0], 0).unwrap();
        assert_abs_diff_eq!(distance(&p, &q).unwrap(), PI, epsilon = 1e-12);
        assert_eq!(distance(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn projective_identifies_antipodes() {
        let spec = ModelSpaceSpec::projective(2, 1.0);
        let p = ModelPoint::new(spec, vec![0.0, 0.0, 1.0], 0).unwrap();
        let q = ModelPoint::new(spec, vec![0.0, 0.0, -1.0], 0).unwrap();
        assert_abs_diff_eq!(distance(&p, &q).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn spec_mismatch_is_rejected() {
        let p = ModelPoint::new(ModelSpaceSpec::sphere(2, 1.0), vec![0.0, 0.0, 1.0], 0).unwrap();
        let q = ModelPoint::new(ModelSpaceSpec::sphere(2, 2.0), vec![0.0, 0.0, 1.0 / 2.0f64.sqrt()], 0)
            .unwrap();
        assert_eq!(distance(&p, &q).unwrap_err(), SpaceformError::SpecMismatch);
    }

    #[test]
    fn hyperboloid_distance_matches_closed_form() {
        // Two points of H² (k = -1): distance acosh(-⟨x,y⟩_M).
        let spec = ModelSpaceSpec::ball(2, -1.0, 3.0);
        let origin = ModelPoint::new(spec, vec![0.0, 0.0, 1.0], 0).unwrap();
        let t: f64 = 0.8;
        let q = ModelPoint::new(spec, vec![t.sinh(), 0.0, t.cosh()], 0).unwrap();
        assert_abs_diff_eq!(distance(&origin, &q).unwrap(), 0.8, epsilon = 1e-12);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(ModelSpaceSpec::sphere(2, 0.0).validate().is_err());
        assert!(ModelSpaceSpec::sphere(2, -1.0).validate().is_err());
        assert!(ModelSpaceSpec::ball(2, 1.0, 4.0).validate().is_err()); // R > π/√k
        assert!(ModelSpaceSpec::simplex(2, 0.7).validate().is_err()); // k ≥ (π/4)²
        assert!(ModelSpaceSpec::simplex(1, 0.0).validate().is_err());
        assert!(ModelSpaceSpec::interval(0.0).validate().is_err());
        assert!(ModelSpaceSpec::interval(PI).validate().is_ok());
    }

    #[test]
    fn geodesic_interpolation_endpoints() {
        let k = 1.0;
        let a = [1.0, 0.0, 0.0];
        let b = [0.0, 1.0, 0.0];
        let m = model_geodesic_point(k, &a, &b, 0.5);
        assert_abs_diff_eq!(model_distance(k, &a, &m), PI / 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(model_distance(k, &m, &b), PI / 4.0, epsilon = 1e-12);
    }
}
