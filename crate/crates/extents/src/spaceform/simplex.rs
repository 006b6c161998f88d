//! Regular geodesic simplices inscribed in the unit ball of a space form.
//!
//! The simplex `Δ_k^n` has its n+1 vertices at geodesic distance 1 from a
//! center point, along tangent directions with pairwise cosine `−1/n` (the
//! directions of a Euclidean regular simplex). Its inradius `r(n,k)` — the
//! distance from the center to a facet — is what determines the special
//! curvature `k(n)` via `r(n, k(n)) = 1/2`.
//!
//! Construction works in the ambient models: for the facet nearest-point we
//! use the fact that totally geodesic hypersurfaces are intersections of the
//! model surface with linear subspaces, so the foot of the perpendicular
//! from the center is the model-normalized centroid of the facet vertices
//! (the unique point fixed by the facet's vertex permutations). A direct
//! numerical minimization over the facet cross-checks the closed form.

use super::{
    domain, model_distance, trig, ModelPoint, ModelSpaceSpec, SpaceformError, INRADIUS_K_LIMIT,
    SIMPLEX_K_LIMIT,
};
use crate::geom;

/// A realized regular simplex: vertices, edge length, inradius.
#[derive(Debug, Clone)]
pub struct SimplexGeometry {
    pub n: usize,
    pub k: f64,
    /// Fixed to 1: the paper's normalization R = 1.
    pub circumradius: f64,
    pub vertices: Vec<ModelPoint>,
    pub edge_length: f64,
    pub inradius: f64,
    pub(crate) center: Vec<f64>,
    pub(crate) vertex_coords: Vec<Vec<f64>>,
    /// Inverse of the vertex-coordinate system used for barycentric
    /// membership tests.
    inverse_basis: Vec<Vec<f64>>,
}

/// n+1 unit vectors in ℝⁿ with pairwise dot −1/n, built recursively.
fn simplex_directions(n: usize) -> Vec<Vec<f64>> {
    if n == 1 {
        return vec![vec![1.0], vec![-1.0]];
    }
    let sub = simplex_directions(n - 1);
    let nf = n as f64;
    let c = (1.0 - 1.0 / (nf * nf)).sqrt();
    let mut dirs = Vec::with_capacity(n + 1);
    let mut first = vec![0.0; n];
    first[0] = 1.0;
    dirs.push(first);
    for w in sub {
        let mut v = Vec::with_capacity(n);
        v.push(-1.0 / nf);
        v.extend(w.iter().map(|x| c * x));
        dirs.push(v);
    }
    dirs
}

/// Center of the model: the pole for k ≠ 0, the origin for k = 0.
fn center_point(n: usize, k: f64) -> Vec<f64> {
    if k == 0.0 {
        vec![0.0; n]
    } else if k > 0.0 {
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0 / k.sqrt();
        c
    } else {
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0 / (-k).sqrt();
        c
    }
}

/// Exponential map at the model center along tangent direction `u` (unit
/// vector in ℝⁿ) for length `t`.
fn exp_center(n: usize, k: f64, u: &[f64], t: f64) -> Vec<f64> {
    if k == 0.0 {
        return geom::scale(u, t);
    }
    let mut out = Vec::with_capacity(n + 1);
    if k > 0.0 {
        let rk = k.sqrt();
        out.extend(u.iter().map(|x| (t * rk).sin() * x / rk));
        out.push((t * rk).cos() / rk);
    } else {
        let s = (-k).sqrt();
        out.extend(u.iter().map(|x| (t * s).sinh() * x / s));
        out.push((t * s).cosh() / s);
    }
    out
}

/// Normalize an ambient vector onto the model surface (radial projection for
/// spheres, Minkowski normalization for hyperboloids, identity for k = 0).
pub(crate) fn model_normalize(k: f64, x: &[f64]) -> Vec<f64> {
    if k == 0.0 {
        return x.to_vec();
    }
    if k > 0.0 {
        geom::scale(x, 1.0 / (k.sqrt() * geom::norm(x)))
    } else {
        let q = geom::minkowski_dot(x, x);
        // Positive combinations of hyperboloid points are timelike.
        geom::scale(x, (1.0 / (k * q)).sqrt())
    }
}

/// Build the simplex for any `k` below the degeneration threshold
/// `(π/2)²`. The public [`regular_simplex`] applies the stricter `(π/4)²`
/// uniqueness guard; the root finder for `k(n)` needs the wider domain.
pub(crate) fn build_simplex(n: usize, k: f64) -> Result<SimplexGeometry, SpaceformError> {
    if n < 2 {
        return Err(domain("simplex requires n >= 2"));
    }
    if !k.is_finite() || k >= INRADIUS_K_LIMIT {
        return Err(domain(format!(
            "simplex construction requires k < (π/2)² = {INRADIUS_K_LIMIT}, got {k}"
        )));
    }
    let dirs = simplex_directions(n);
    let vertex_coords: Vec<Vec<f64>> = dirs.iter().map(|u| exp_center(n, k, u, 1.0)).collect();
    let center = center_point(n, k);
    let edge_length = model_distance(k, &vertex_coords[0], &vertex_coords[1]);
    let inverse_basis = barycentric_inverse(n, k, &vertex_coords)?;
    let inradius = inradius_closed_form(k, &center, &vertex_coords);

    let spec = ModelSpaceSpec::simplex(n, k);
    let vertices = vertex_coords
        .iter()
        .map(|c| ModelPoint::new_unchecked(spec, c.clone(), 0))
        .collect();
    Ok(SimplexGeometry {
        n,
        k,
        circumradius: 1.0,
        vertices,
        edge_length,
        inradius,
        center,
        vertex_coords,
        inverse_basis,
    })
}

/// The unique maximal regularly inscribed n-simplex in the unit ball,
/// curvature `k < (π/4)²`.
pub fn regular_simplex(n: usize, k: f64) -> Result<SimplexGeometry, SpaceformError> {
    if !k.is_finite() || k >= SIMPLEX_K_LIMIT {
        return Err(domain(format!(
            "regular simplex requires k < (π/4)² = {SIMPLEX_K_LIMIT}, got {k}"
        )));
    }
    build_simplex(n, k)
}

/// Rows of the inverse of the linear system mapping barycentric-style
/// coefficients to ambient coordinates.
fn barycentric_inverse(
    n: usize,
    k: f64,
    verts: &[Vec<f64>],
) -> Result<Vec<Vec<f64>>, SpaceformError> {
    // k ≠ 0: ambient coordinates of the n+1 vertices form a basis of ℝ^{n+1}
    // (cone coordinates). k = 0: affine coordinates with a Σλ = 1 row.
    let m = n + 1;
    let mut system = vec![vec![0.0; m]; m];
    if k != 0.0 {
        for (j, v) in verts.iter().enumerate() {
            for i in 0..m {
                system[i][j] = v[i];
            }
        }
    } else {
        for (j, v) in verts.iter().enumerate() {
            for i in 0..n {
                system[i][j] = v[i];
            }
            system[n][j] = 1.0;
        }
    }
    let mut inverse = vec![vec![0.0; m]; m];
    for col in 0..m {
        let mut e = vec![0.0; m];
        e[col] = 1.0;
        let x = geom::solve_linear(&system, &e)
            .ok_or_else(|| domain("degenerate simplex vertex system"))?;
        for row in 0..m {
            inverse[row][col] = x[row];
        }
    }
    Ok(inverse)
}

impl SimplexGeometry {
    /// Barycentric-style coefficients of an ambient point: nonnegative
    /// exactly when the point lies in the (cone over the) simplex.
    pub fn barycentric(&self, coords: &[f64]) -> Result<Vec<f64>, SpaceformError> {
        let m = self.n + 1;
        if coords.len() != self.vertex_coords[0].len() {
            return Err(domain("wrong ambient dimension for barycentric coordinates"));
        }
        let mut rhs: Vec<f64> = coords.to_vec();
        if self.k == 0.0 {
            rhs.push(1.0);
        }
        let mut lambda = vec![0.0; m];
        for (row, l) in lambda.iter_mut().enumerate() {
            *l = geom::dot(&self.inverse_basis[row], &rhs);
        }
        Ok(lambda)
    }

    /// Whether the point lies in the simplex (within `tol` in coefficient
    /// space).
    pub fn contains(&self, coords: &[f64], tol: f64) -> bool {
        match self.barycentric(coords) {
            Ok(l) => l.iter().all(|&x| x >= -tol),
            Err(_) => false,
        }
    }

    /// Ambient point of the facet opposite `omit`, parametrized by
    /// barycentric weights over the facet's n vertices.
    pub(crate) fn facet_point(&self, omit: usize, weights: &[f64]) -> Vec<f64> {
        let dim = self.vertex_coords[0].len();
        let mut x = vec![0.0; dim];
        let mut wi = 0;
        for (j, v) in self.vertex_coords.iter().enumerate() {
            if j == omit {
                continue;
            }
            for (c, vc) in x.iter_mut().zip(v) {
                *c += weights[wi] * vc;
            }
            wi += 1;
        }
        model_normalize(self.k, &x)
    }

    pub(crate) fn distance_from_center(&self, coords: &[f64]) -> f64 {
        model_distance(self.k, &self.center, coords)
    }

    pub fn spec(&self) -> ModelSpaceSpec {
        ModelSpaceSpec::simplex(self.n, self.k)
    }

    pub fn center_point(&self) -> ModelPoint {
        ModelPoint::new_unchecked(self.spec(), self.center.clone(), 0)
    }
}

/// Closed form for the center-to-facet distance: the nearest point of the
/// facet is the model-normalized centroid of its vertices.
fn inradius_closed_form(k: f64, center: &[f64], verts: &[Vec<f64>]) -> f64 {
    let n = verts.len() - 1;
    let dim = verts[0].len();
    // Facet omitting vertex 0; all facets are congruent.
    let mut m = vec![0.0; dim];
    for v in &verts[1..] {
        for (c, vc) in m.iter_mut().zip(v) {
            *c += vc / n as f64;
        }
    }
    let foot = model_normalize(k, &m);
    model_distance(k, center, &foot)
}

/// Direct minimization of the center-to-facet distance over barycentric
/// weights, used as the self-check oracle for the closed form.
fn inradius_minimized(geometry: &SimplexGeometry) -> f64 {
    let n = geometry.n;
    let f = |w: &[f64]| geometry.distance_from_center(&geometry.facet_point(0, w));
    let uniform = vec![1.0 / n as f64; n];
    let mut best = f64::INFINITY;
    // The uniform start sits at the symmetric optimum; the perturbed starts
    // guard against the symmetry argument being wrong for some curvature.
    let mut starts = vec![uniform.clone()];
    for shift in 0..2usize.min(n) {
        let mut w = uniform.clone();
        w[shift] += 0.37;
        let total: f64 = w.iter().sum();
        for x in w.iter_mut() {
            *x /= total;
        }
        starts.push(w);
    }
    for start in starts {
        best = best.min(minimize_on_weight_simplex(&f, start, 1e-10));
    }
    best
}

/// Coordinate-descent over the weight simplex: repeatedly optimize mass
/// transfers between coordinate pairs by golden-section search until moves
/// fall below `step_tol`. Returns the best value seen.
pub(crate) fn minimize_on_weight_simplex(
    f: &dyn Fn(&[f64]) -> f64,
    mut w: Vec<f64>,
    step_tol: f64,
) -> f64 {
    let m = w.len();
    let mut value = f(&w);
    if m == 1 {
        return value;
    }
    for _sweep in 0..200 {
        let mut largest_move = 0.0_f64;
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                // Move t from w_j to w_i, t in [-w_i, w_j].
                let (lo, hi) = (-w[i], w[j]);
                if hi - lo < step_tol {
                    continue;
                }
                let g = |t: f64| {
                    let mut trial = w.clone();
                    trial[i] += t;
                    trial[j] -= t;
                    f(&trial)
                };
                let (t, val) = golden_min(&g, lo, hi, step_tol * 0.1);
                if val < value - 1e-15 {
                    w[i] += t;
                    w[j] -= t;
                    value = val;
                    largest_move = largest_move.max(t.abs());
                }
            }
        }
        if largest_move < step_tol {
            break;
        }
    }
    value
}

/// Golden-section minimization on `[lo, hi]`.
pub(crate) fn golden_min(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (g(x1), g(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = g(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, g(mid))
}

/// Inradius `r(n,k)` of the regular simplex, with the closed form
/// cross-checked against direct minimization (the two must agree to 1e-7).
pub fn inradius(n: usize, k: f64) -> Result<f64, SpaceformError> {
    let geometry = regular_simplex(n, k)?;
    let minimized = inradius_minimized(&geometry);
    if (geometry.inradius - minimized).abs() > 1e-7 {
        return Err(SpaceformError::SelfCheckFailed {
            closed: geometry.inradius,
            minimized,
        });
    }
    Ok(geometry.inradius)
}

/// `r(n,k)` on the extended domain `k < (π/2)²`, closed form only; this is
/// what the `k(n)` root finder samples.
pub(crate) fn inradius_extended(n: usize, k: f64) -> Result<f64, SpaceformError> {
    Ok(build_simplex(n, k)?.inradius)
}

/// Solve `r(n, k(n)) = 1/2` by bisection over a bracket window.
///
/// `r(n,·)` is strictly increasing, so a sign change pins the root; the
/// residual `|r − 1/2|` is driven below `tol_root`.
pub fn solve_kn_in(
    n: usize,
    window_lo: f64,
    window_hi: f64,
    tol_root: f64,
) -> Result<f64, SpaceformError> {
    if n < 2 {
        return Err(domain("k(n) is defined for n >= 2"));
    }
    if !(tol_root > 0.0) {
        return Err(domain("tol_root must be positive"));
    }
    let hi_cap = INRADIUS_K_LIMIT - 1e-9;
    let (lo, hi) = (window_lo, window_hi.min(hi_cap));
    if !(lo < hi) {
        return Err(domain("empty bracket window"));
    }
    let g = |k: f64| inradius_extended(n, k).map(|r| r - 0.5);
    let (mut glo, mut ghi) = (g(lo)?, g(hi)?);
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() {
        return Err(SpaceformError::BracketFailure { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..300 {
        let mid = 0.5 * (a + b);
        let gm = g(mid)?;
        if gm.abs() <= tol_root || (b - a) < f64::EPSILON * a.abs().max(1.0) {
            return Ok(mid);
        }
        if gm.signum() == glo.signum() {
            a = mid;
            glo = gm;
        } else {
            b = mid;
            ghi = gm;
        }
    }
    let _ = ghi;
    Ok(0.5 * (a + b))
}

/// `k(n)` with the default bracket `[−10, (π/2)² − ε]`.
pub fn solve_kn(n: usize, tol_root: f64) -> Result<f64, SpaceformError> {
    solve_kn_in(n, -10.0, INRADIUS_K_LIMIT - 1e-6, tol_root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn directions_have_uniform_cosine() {
        for n in 2..=6 {
            let dirs = simplex_directions(n);
            assert_eq!(dirs.len(), n + 1);
            for (i, a) in dirs.iter().enumerate() {
                assert_abs_diff_eq!(geom::norm(a), 1.0, epsilon = 1e-12);
                for b in dirs.iter().skip(i + 1) {
                    assert_abs_diff_eq!(geom::dot(a, b), -1.0 / n as f64, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn euclidean_edge_lengths() {
        // Circumradius-1 regular simplex: edge = √(2(n+1)/n).
        for n in 2..=6 {
            let s = regular_simplex(n, 0.0).unwrap();
            let want = (2.0 * (n as f64 + 1.0) / n as f64).sqrt();
            assert_abs_diff_eq!(s.edge_length, want, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(
            regular_simplex(2, 0.0).unwrap().edge_length,
            3.0_f64.sqrt(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            regular_simplex(3, 0.0).unwrap().edge_length,
            (8.0_f64 / 3.0).sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn vertices_are_regular_and_on_the_unit_sphere_of_the_center() {
        for &k in &[-1.5, -0.2, 0.0, 0.3, 0.95 * SIMPLEX_K_LIMIT] {
            let s = regular_simplex(2, k).unwrap();
            for v in &s.vertex_coords {
                assert_abs_diff_eq!(s.distance_from_center(v), 1.0, epsilon = 1e-9);
            }
            let mut edges = Vec::new();
            for i in 0..s.vertex_coords.len() {
                for j in i + 1..s.vertex_coords.len() {
                    edges.push(model_distance(k, &s.vertex_coords[i], &s.vertex_coords[j]));
                }
            }
            for e in &edges {
                assert_abs_diff_eq!(*e, edges[0], epsilon = 1e-9);
            }
            // Edge length agrees with the hinge formula at angle arccos(−1/n).
            let alpha = (-1.0 / s.n as f64).acos();
            let via_loc = trig::law_of_cosines(k, 1.0, 1.0, alpha).unwrap();
            assert_abs_diff_eq!(s.edge_length, via_loc, epsilon = 1e-10);
        }
    }

    #[test]
    fn euclidean_inradius_is_reciprocal_dimension() {
        assert_abs_diff_eq!(inradius(2, 0.0).unwrap(), 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(inradius(3, 0.0).unwrap(), 1.0 / 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(inradius(4, 0.0).unwrap(), 0.25, epsilon = 1e-9);
    }

    #[test]
    fn inradius_matches_independent_values() {
        // Frozen from a 50-digit independent computation.
        assert_abs_diff_eq!(inradius(2, -2.0).unwrap(), 0.337_602_585_129_294_3, epsilon = 1e-10);
        assert_abs_diff_eq!(inradius(2, -1.0).unwrap(), 0.400_991_581_427_006_9, epsilon = 1e-10);
        assert_abs_diff_eq!(inradius(2, 0.3).unwrap(), 0.540_468_260_623_234, epsilon = 1e-10);
        assert_abs_diff_eq!(inradius(2, 0.55).unwrap(), 0.579_155_690_006_436, epsilon = 1e-10);
    }

    #[test]
    fn inradius_strictly_increasing_in_curvature() {
        for n in 2..=4 {
            let mut prev = f64::NEG_INFINITY;
            for &k in &[-2.0, -1.0, 0.0, 0.3, 0.55] {
                let r = inradius(n, k).unwrap();
                assert!(r > prev, "r({n},{k}) = {r} not above {prev}");
                assert!(r > 0.0 && r < 1.0);
                prev = r;
            }
        }
    }

    #[test]
    fn curvature_guard() {
        assert!(regular_simplex(2, 3.0).is_err());
        assert!(regular_simplex(2, SIMPLEX_K_LIMIT).is_err());
        assert!(regular_simplex(1, 0.0).is_err());
        // Extended domain accepts (π/4)² ≤ k < (π/2)².
        assert!(build_simplex(2, 1.0).is_ok());
        assert!(build_simplex(2, INRADIUS_K_LIMIT).is_err());
    }

    #[test]
    fn kn_for_the_plane_is_zero() {
        let k2 = solve_kn(2, 1e-10).unwrap();
        assert!(k2.abs() <= 1e-6, "k(2) = {k2}");
    }

    #[test]
    fn kn_regression_values() {
        // Pinned from the independent 50-digit computation; not paper
        // ground truth (the paper gives no numeric k(n)).
        let expect = [(3, 1.096_622_711_232_151), (4, 1.515_261_087_139_939_5), (5, 1.737_429_978_349_456_7)];
        for (n, want) in expect {
            let k = solve_kn(n, 1e-10).unwrap();
            assert_abs_diff_eq!(k, want, epsilon = 1e-8);
            let r = inradius_extended(n, k).unwrap();
            assert!((r - 0.5).abs() <= 1e-10, "residual {}", (r - 0.5).abs());
        }
    }

    #[test]
    fn bracket_failure_when_window_misses_the_root() {
        // r(2, k) < 1/2 on every k < 0, so a negative window has no sign
        // change.
        assert!(matches!(
            solve_kn_in(2, -5.0, -1.0, 1e-10),
            Err(SpaceformError::BracketFailure { .. })
        ));
    }

    #[test]
    fn barycentric_classifies_membership() {
        for &k in &[-1.0, 0.0, 0.4] {
            let s = regular_simplex(2, k).unwrap();
            assert!(s.contains(&s.center, 1e-9));
            for v in &s.vertex_coords {
                assert!(s.contains(v, 1e-9));
            }
            // A point beyond a vertex is outside.
            let dir: Vec<f64> = s.vertex_coords[0].clone();
            let outside = model_normalize(
                k,
                &geom::axpy(&geom::scale(&dir, 1.5), -0.5, &s.center),
            );
            assert!(!s.contains(&outside, 1e-9));
        }
    }
}
