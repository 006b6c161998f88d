//! Space-form trigonometry: the law of cosines in all three curvature signs.

use super::{domain, SpaceformError};

/// Third side of the curvature-`k` triangle with sides `b`, `c` enclosing
/// angle `alpha`.
///
/// Spherical for `k > 0`, Euclidean for `k = 0`, hyperbolic for `k < 0`;
/// the `k → 0` limits reproduce the Euclidean value.
pub fn law_of_cosines(k: f64, b: f64, c: f64, alpha: f64) -> Result<f64, SpaceformError> {
    if !(k.is_finite() && b.is_finite() && c.is_finite() && alpha.is_finite()) {
        return Err(domain("law_of_cosines arguments must be finite"));
    }
    if b < 0.0 || c < 0.0 {
        return Err(domain("side lengths must be nonnegative"));
    }
    if !(0.0..=std::f64::consts::PI).contains(&alpha) {
        return Err(domain("angle must lie in [0, π]"));
    }
    if k > 0.0 {
        let cap = std::f64::consts::PI / k.sqrt();
        if b > cap || c > cap {
            return Err(domain(format!("sides must be ≤ π/√k = {cap} for k = {k}")));
        }
    }
    Ok(with_cos_angle(k, b, c, alpha.cos()))
}

/// Same as [`law_of_cosines`] but taking `cos(alpha)` directly. Used where
/// the cosine is already known algebraically, avoiding an `acos`/`cos`
/// round trip near degenerate angles.
pub(crate) fn with_cos_angle(k: f64, b: f64, c: f64, cos_alpha: f64) -> f64 {
    let cos_alpha = cos_alpha.clamp(-1.0, 1.0);
    if k > 0.0 {
        let rk = k.sqrt();
        let (bb, cc) = (b * rk, c * rk);
        let cos_a = bb.cos() * cc.cos() + bb.sin() * cc.sin() * cos_alpha;
        cos_a.clamp(-1.0, 1.0).acos() / rk
    } else if k == 0.0 {
        (b * b + c * c - 2.0 * b * c * cos_alpha).max(0.0).sqrt()
    } else {
        let s = (-k).sqrt();
        let (bb, cc) = (b * s, c * s);
        let cosh_a = bb.cosh() * cc.cosh() - bb.sinh() * cc.sinh() * cos_alpha;
        cosh_a.max(1.0).acosh() / s
    }
}

/// Cosine of the angle opposite side `a` in the curvature-`k` triangle with
/// other sides `b`, `c`; the inverse of the law of cosines. Degenerate
/// triangles (a zero adjacent side) report angle 0.
pub(crate) fn cos_angle_from_sides(k: f64, a: f64, b: f64, c: f64) -> f64 {
    if b <= 0.0 || c <= 0.0 {
        return 1.0;
    }
    let raw = if k > 0.0 {
        let rk = k.sqrt();
        let denom = (b * rk).sin() * (c * rk).sin();
        if denom.abs() < f64::MIN_POSITIVE {
            return 1.0;
        }
        ((a * rk).cos() - (b * rk).cos() * (c * rk).cos()) / denom
    } else if k == 0.0 {
        (b * b + c * c - a * a) / (2.0 * b * c)
    } else {
        let s = (-k).sqrt();
        ((b * s).cosh() * (c * s).cosh() - (a * s).cosh()) / ((b * s).sinh() * (c * s).sinh())
    };
    raw.clamp(-1.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn euclidean_pythagoras() {
        assert_abs_diff_eq!(
            law_of_cosines(0.0, 3.0, 4.0, FRAC_PI_2).unwrap(),
            5.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn spherical_lune() {
        // On the unit sphere, both sides π/2 gives cos a = cos α: a = α.
        for &alpha in &[0.3, 1.0, 2.0, 3.0] {
            assert_abs_diff_eq!(
                law_of_cosines(1.0, FRAC_PI_2, FRAC_PI_2, alpha).unwrap(),
                alpha,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn hyperbolic_value_frozen() {
        // acosh(cosh²(1) − sinh²(1)·cos(π/3)), evaluated independently at
        // 50-digit precision.
        assert_abs_diff_eq!(
            law_of_cosines(-1.0, 1.0, 1.0, PI / 3.0).unwrap(),
            1.116_326_919_023_212_2,
            epsilon = 1e-12
        );
    }

    #[test]
    fn near_flat_limits_match_euclidean() {
        // |a(k) − a(0)| ≤ C·|k| on a fixed grid, probed at k = ±1e-6.
        let grid = [
            (0.5, 0.5, 0.4),
            (1.0, 2.0, 1.0),
            (3.0, 4.0, FRAC_PI_2),
            (2.0, 2.0, 3.0),
            (0.1, 1.5, 0.2),
        ];
        for &(b, c, alpha) in &grid {
            let flat = law_of_cosines(0.0, b, c, alpha).unwrap();
            for &k in &[1e-6, -1e-6] {
                let bent = law_of_cosines(k, b, c, alpha).unwrap();
                assert!(
                    (bent - flat).abs() <= 20.0 * k.abs(),
                    "k={k} b={b} c={c} alpha={alpha}: {bent} vs {flat}"
                );
            }
        }
    }

    #[test]
    fn degenerate_angles() {
        // alpha = 0 folds the triangle: a = |b − c| in every curvature.
        for &k in &[1.0, 0.0, -1.0] {
            assert_abs_diff_eq!(law_of_cosines(k, 1.2, 0.7, 0.0).unwrap(), 0.5, epsilon = 1e-9);
        }
        // Zero side: a = other side, any angle.
        assert_abs_diff_eq!(law_of_cosines(1.0, 0.0, 0.9, 1.0).unwrap(), 0.9, epsilon = 1e-12);
    }

    #[test]
    fn domain_violations() {
        assert!(law_of_cosines(0.0, -1.0, 1.0, 1.0).is_err());
        assert!(law_of_cosines(0.0, 1.0, 1.0, 4.0).is_err());
        assert!(law_of_cosines(4.0, 2.0, 1.0, 1.0).is_err()); // 2 > π/√4
        assert!(law_of_cosines(f64::NAN, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn angle_from_sides_inverts() {
        for &k in &[0.7, 0.0, -1.3] {
            let (b, c, alpha) = (0.8, 1.1, 0.9);
            let a = law_of_cosines(k, b, c, alpha).unwrap();
            assert_abs_diff_eq!(
                cos_angle_from_sides(k, a, b, c),
                alpha.cos(),
                epsilon = 1e-12
            );
        }
    }
}
