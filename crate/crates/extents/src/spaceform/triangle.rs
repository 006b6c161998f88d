//! Comparison triangles: curvature-`k` realizations of a side-length triple.
//!
//! Given the three distances of a hinge `(p_0, p_1, p_2)`, the comparison
//! triangle is the triangle in the 2-dimensional curvature-`k` model with
//! the same side lengths. Distance comparison against the side `p_1 p_2` is
//! what the Toponogov-style checkers consume.

use super::trig::{cos_angle_from_sides, with_cos_angle};
use super::{domain, model_distance, SpaceformError};

/// A realized curvature-`k` triangle with prescribed side lengths.
#[derive(Debug, Clone)]
pub struct ComparisonTriangle {
    k: f64,
    d01: f64,
    d02: f64,
    d12: f64,
    /// Vertices `[p0, p1, p2]` in the 2-dimensional model (ambient ℝ³ for
    /// k ≠ 0, ℝ² for k = 0).
    vertices: [Vec<f64>; 3],
    /// Cosine of the angle at `p1` between the sides to `p0` and to `p2`.
    cos_at_p1: f64,
}

/// Realize side lengths `(d01, d02, d12)` in curvature `k`.
///
/// Fails with [`SpaceformError::NotRealizable`] when the triangle inequality
/// fails, or (for `k > 0`) when a side reaches `π/√k` or the perimeter
/// exceeds `2π/√k`.
pub fn comparison_triangle(
    k: f64,
    d01: f64,
    d02: f64,
    d12: f64,
) -> Result<ComparisonTriangle, SpaceformError> {
    for &d in &[d01, d02, d12] {
        if !d.is_finite() || d < 0.0 {
            return Err(domain("side lengths must be finite and nonnegative"));
        }
    }
    let slack = 1e-9 * (1.0 + d01.max(d02).max(d12));
    if d01 > d02 + d12 + slack || d02 > d01 + d12 + slack || d12 > d01 + d02 + slack {
        return Err(SpaceformError::NotRealizable(format!(
            "triangle inequality fails for ({d01}, {d02}, {d12})"
        )));
    }
    if k > 0.0 {
        let cap = std::f64::consts::PI / k.sqrt();
        if d01 >= cap || d02 >= cap || d12 >= cap {
            return Err(SpaceformError::NotRealizable(format!(
                "sides must stay below π/√k = {cap}"
            )));
        }
        if d01 + d02 + d12 > 2.0 * cap + slack {
            return Err(SpaceformError::NotRealizable(format!(
                "perimeter exceeds 2π/√k = {}",
                2.0 * cap
            )));
        }
    }
    let cos_at_p1 = cos_angle_from_sides(k, d02, d01, d12);
    let sin_at_p1 = (1.0 - cos_at_p1 * cos_at_p1).max(0.0).sqrt();

    // p1 at the pole, p2 along the first tangent direction, p0 rotated by
    // the hinge angle.
    let p1 = pole(k);
    let p2 = exp_pole(k, d12, 1.0, 0.0);
    let p0 = exp_pole(k, d01, cos_at_p1, sin_at_p1);
    Ok(ComparisonTriangle {
        k,
        d01,
        d02,
        d12,
        vertices: [p0, p1, p2],
        cos_at_p1,
    })
}

fn pole(k: f64) -> Vec<f64> {
    if k > 0.0 {
        vec![0.0, 0.0, 1.0 / k.sqrt()]
    } else if k == 0.0 {
        vec![0.0, 0.0]
    } else {
        vec![0.0, 0.0, 1.0 / (-k).sqrt()]
    }
}

/// Exponential map at the pole along the unit tangent `(ux, uy)` for length
/// `t`.
fn exp_pole(k: f64, t: f64, ux: f64, uy: f64) -> Vec<f64> {
    if k > 0.0 {
        let rk = k.sqrt();
        vec![
            (t * rk).sin() * ux / rk,
            (t * rk).sin() * uy / rk,
            (t * rk).cos() / rk,
        ]
    } else if k == 0.0 {
        vec![t * ux, t * uy]
    } else {
        let s = (-k).sqrt();
        vec![
            (t * s).sinh() * ux / s,
            (t * s).sinh() * uy / s,
            (t * s).cosh() / s,
        ]
    }
}

impl ComparisonTriangle {
    pub fn curvature(&self) -> f64 {
        self.k
    }

    /// Input side lengths `(d01, d02, d12)`.
    pub fn sides(&self) -> (f64, f64, f64) {
        (self.d01, self.d02, self.d12)
    }

    /// Realized vertices `[p0, p1, p2]` in model coordinates.
    pub fn vertices(&self) -> &[Vec<f64>; 3] {
        &self.vertices
    }

    /// Distance between realized vertices `i` and `j`, for checking that the
    /// realization reproduces the inputs.
    pub fn realized_distance(&self, i: usize, j: usize) -> f64 {
        model_distance(self.k, &self.vertices[i], &self.vertices[j])
    }

    /// Distance from `p0` to the point at arc-parameter `t ∈ [0, 1]` along
    /// the side from `p1` to `p2`. `t = 0` gives `d01`, `t = 1` gives `d02`.
    pub fn distance_at(&self, t: f64) -> Result<f64, SpaceformError> {
        if !(0.0..=1.0).contains(&t) {
            return Err(domain("arc parameter must lie in [0, 1]"));
        }
        // Hinge at p1 with sides d01 and t·d12 enclosing the same angle;
        // evaluated via the cached cosine to stay accurate for thin
        // triangles.
        Ok(with_cos_angle(self.k, self.d01, t * self.d12, self.cos_at_p1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn euclidean_right_triangle() {
        let t = comparison_triangle(0.0, 3.0, 4.0, 5.0).unwrap();
        for (i, j, want) in [(0, 1, 3.0), (0, 2, 4.0), (1, 2, 5.0)] {
            assert_abs_diff_eq!(t.realized_distance(i, j), want, epsilon = 1e-12);
        }
        // Angle at p0 (opposite the length-5 side) is π/2: check via the
        // dot product of the edge vectors at p0.
        let v = t.vertices();
        let e1: Vec<f64> = v[1].iter().zip(&v[0]).map(|(a, b)| a - b).collect();
        let e2: Vec<f64> = v[2].iter().zip(&v[0]).map(|(a, b)| a - b).collect();
        assert_abs_diff_eq!(crate::geom::dot(&e1, &e2), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn octant_triangle_on_the_sphere() {
        let t = comparison_triangle(1.0, FRAC_PI_2, FRAC_PI_2, FRAC_PI_2).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert_abs_diff_eq!(t.realized_distance(i, j), FRAC_PI_2, epsilon = 1e-12);
        }
    }

    #[test]
    fn unrealizable_inputs() {
        assert!(matches!(
            comparison_triangle(0.0, 1.0, 1.0, 3.0),
            Err(SpaceformError::NotRealizable(_))
        ));
        // Side at π/√k.
        assert!(comparison_triangle(1.0, PI, 1.0, 1.0).is_err());
        // Spherical perimeter constraint.
        assert!(comparison_triangle(1.0, 3.0, 3.0, 3.0).is_err());
    }

    #[test]
    fn distance_at_endpoints() {
        let t = comparison_triangle(-0.5, 1.0, 1.4, 0.9).unwrap();
        assert_abs_diff_eq!(t.distance_at(0.0).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.distance_at(1.0).unwrap(), 1.4, epsilon = 1e-12);
        assert!(t.distance_at(1.5).is_err());
    }

    #[test]
    fn median_of_right_triangle() {
        // In the 3-4-5 right triangle the midpoint of the hypotenuse is at
        // distance 2.5 from the right-angle vertex.
        let t = comparison_triangle(0.0, 3.0, 4.0, 5.0).unwrap();
        assert_abs_diff_eq!(t.distance_at(0.5).unwrap(), 2.5, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_collinear_triple() {
        let t = comparison_triangle(0.0, 1.0, 3.0, 2.0).unwrap();
        assert_abs_diff_eq!(t.distance_at(0.5).unwrap(), 2.0, epsilon = 1e-12);
    }
}
