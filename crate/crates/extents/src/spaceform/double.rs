//! The double of a simplex: two copies glued along their common boundary.
//!
//! Within one copy the simplex is geodesically convex, so distances are the
//! ambient space-form distances. A path between different copies must cross
//! the boundary; its length is `min_b d(p, b) + d(b, q)` over boundary
//! points `b`. The minimizer is located with a per-facet barycentric grid
//! and sharpened by coordinate-descent refinement.

use rayon::prelude::*;

use super::simplex::{build_simplex, minimize_on_weight_simplex, SimplexGeometry};
use super::{domain, model_distance, ModelKind, ModelPoint, SpaceformError};

/// Barycentric grids over every facet plus the refinement machinery.
#[derive(Debug, Clone)]
pub struct DoubleGeometry {
    simplex: SimplexGeometry,
    /// Flat list of boundary candidates: (facet index, weights, ambient coords).
    candidates: Vec<BoundaryCandidate>,
    /// Weight-space step below which refinement stops.
    refine_tol: f64,
}

#[derive(Debug, Clone)]
struct BoundaryCandidate {
    facet: usize,
    weights: Vec<f64>,
    coords: Vec<f64>,
}

/// All compositions of `resolution` into `parts` nonnegative integers,
/// scaled to barycentric weights.
pub(crate) fn weight_grid(parts: usize, resolution: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; parts];
    fn rec(
        idx: usize,
        remaining: usize,
        resolution: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<f64>>,
    ) {
        if idx == current.len() - 1 {
            current[idx] = remaining;
            out.push(current.iter().map(|&c| c as f64 / resolution as f64).collect());
            return;
        }
        for c in 0..=remaining {
            current[idx] = c;
            rec(idx + 1, remaining - c, resolution, current, out);
        }
    }
    rec(0, resolution, resolution, &mut current, &mut out);
    out
}

/// Smallest grid resolution whose facet grid reaches `target` points.
fn facet_resolution(facet_vertices: usize, target: usize) -> usize {
    let mut m = 1usize;
    loop {
        // C(m + v - 1, v - 1) grid points.
        let mut count = 1usize;
        for i in 1..facet_vertices {
            count = count * (m + i) / i;
        }
        if count >= target || m > 4096 {
            return m;
        }
        m += 1;
    }
}

impl DoubleGeometry {
    /// Build the boundary machinery for `DΔ_k^n` with roughly
    /// `grid_per_facet` candidates per facet.
    pub fn with_grid(n: usize, k: f64, grid_per_facet: usize) -> Result<Self, SpaceformError> {
        let simplex = build_simplex(n, k)?;
        if k >= super::SIMPLEX_K_LIMIT {
            return Err(domain(format!(
                "double simplex requires k < (π/4)² = {}, got {k}",
                super::SIMPLEX_K_LIMIT
            )));
        }
        let resolution = facet_resolution(n, grid_per_facet);
        let grid = weight_grid(n, resolution);
        let mut candidates = Vec::with_capacity((n + 1) * grid.len());
        for facet in 0..=n {
            for w in &grid {
                candidates.push(BoundaryCandidate {
                    facet,
                    weights: w.clone(),
                    coords: simplex.facet_point(facet, w),
                });
            }
        }
        Ok(DoubleGeometry { simplex, candidates, refine_tol: 1e-7 })
    }

    pub fn new(n: usize, k: f64) -> Result<Self, SpaceformError> {
        DoubleGeometry::with_grid(n, k, 1000)
    }

    pub fn simplex(&self) -> &SimplexGeometry {
        &self.simplex
    }

    pub fn spec(&self) -> super::ModelSpaceSpec {
        super::ModelSpaceSpec::double_simplex(self.simplex.n, self.simplex.k)
    }

    fn ambient(&self, a: &[f64], b: &[f64]) -> f64 {
        model_distance(self.simplex.k, a, b)
    }

    /// Whether ambient coordinates lie on the simplex boundary (some
    /// barycentric coefficient vanishes).
    pub fn is_boundary(&self, coords: &[f64]) -> bool {
        match self.simplex.barycentric(coords) {
            Ok(l) => l.iter().any(|&x| x.abs() <= 1e-9),
            Err(_) => false,
        }
    }

    /// Geodesic distance on the double.
    pub fn distance(&self, p: &ModelPoint, q: &ModelPoint) -> Result<f64, SpaceformError> {
        if p.spec != q.spec || p.spec.kind != ModelKind::DoubleSimplex {
            return Err(SpaceformError::SpecMismatch);
        }
        // Same copy, or either endpoint on the glued boundary: the ambient
        // distance is exact (the simplex is convex and crossing at the
        // boundary endpoint itself is optimal).
        if p.copy == q.copy || self.is_boundary(&p.coords) || self.is_boundary(&q.coords) {
            return Ok(self.ambient(&p.coords, &q.coords));
        }
        Ok(self.cross_distance(&p.coords, &q.coords))
    }

    /// Boundary-crossing distance between interior points of opposite
    /// copies: grid scan, then local refinement on the winning facet.
    fn cross_distance(&self, p: &[f64], q: &[f64]) -> f64 {
        let mut best = f64::INFINITY;
        let mut best_idx = 0;
        for (idx, cand) in self.candidates.iter().enumerate() {
            let v = self.ambient(p, &cand.coords) + self.ambient(&cand.coords, q);
            if v < best {
                best = v;
                best_idx = idx;
            }
        }
        self.refine_crossing(p, q, best_idx, best)
    }

    fn refine_crossing(&self, p: &[f64], q: &[f64], candidate: usize, grid_value: f64) -> f64 {
        let cand = &self.candidates[candidate];
        let facet = cand.facet;
        let f = |w: &[f64]| {
            let b = self.simplex.facet_point(facet, w);
            self.ambient(p, &b) + self.ambient(&b, q)
        };
        let refined = minimize_on_weight_simplex(&f, cand.weights.clone(), self.refine_tol);
        refined.min(grid_value)
    }

    /// Distances from one point to every boundary candidate; the bulk
    /// pairwise builders share these tables.
    pub(crate) fn boundary_table(&self, coords: &[f64]) -> Vec<f64> {
        self.candidates
            .iter()
            .map(|c| self.ambient(coords, &c.coords))
            .collect()
    }

    pub(crate) fn cross_distance_from_tables(
        &self,
        p: &[f64],
        q: &[f64],
        tp: &[f64],
        tq: &[f64],
    ) -> f64 {
        let mut best = f64::INFINITY;
        let mut best_idx = 0;
        for idx in 0..self.candidates.len() {
            let v = tp[idx] + tq[idx];
            if v < best {
                best = v;
                best_idx = idx;
            }
        }
        self.refine_crossing(p, q, best_idx, best)
    }

    /// Structured dense sample of the double: the full barycentric grid of
    /// each copy (deduplicating the shared boundary) plus both copy centers.
    /// Returns points and the grid pitch.
    pub fn structured_sample(&self, resolution: usize) -> (Vec<ModelPoint>, f64) {
        let n = self.simplex.n;
        let spec = self.spec();
        let grid = weight_grid(n + 1, resolution);
        let mut points = Vec::new();
        for w in &grid {
            let on_boundary = w.iter().any(|&x| x == 0.0);
            let coords = full_simplex_point(&self.simplex, w);
            if on_boundary {
                points.push(ModelPoint::new_unchecked(spec, coords, 0));
            } else {
                points.push(ModelPoint::new_unchecked(spec, coords.clone(), 0));
                points.push(ModelPoint::new_unchecked(spec, coords, 1));
            }
        }
        for copy in 0..2 {
            points.push(ModelPoint::new_unchecked(
                spec,
                self.simplex.center.clone(),
                copy,
            ));
        }
        let pitch = self.simplex.edge_length / resolution as f64;
        (points, pitch)
    }

    /// Pairwise distance matrix for a batch of double points, sharing
    /// boundary tables across pairs.
    pub fn distance_matrix(&self, points: &[ModelPoint]) -> Vec<Vec<f64>> {
        let tables: Vec<Option<Vec<f64>>> = points
            .par_iter()
            .map(|p| {
                if self.is_boundary(&p.coords) {
                    None
                } else {
                    Some(self.boundary_table(&p.coords))
                }
            })
            .collect();
        let n = points.len();
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0.0; n];
                for j in 0..n {
                    if j == i {
                        continue;
                    }
                    let (p, q) = (&points[i], &points[j]);
                    row[j] = if p.copy == q.copy || tables[i].is_none() || tables[j].is_none() {
                        self.ambient(&p.coords, &q.coords)
                    } else if i < j {
                        self.cross_distance_from_tables(
                            &p.coords,
                            &q.coords,
                            tables[i].as_ref().unwrap(),
                            tables[j].as_ref().unwrap(),
                        )
                    } else {
                        0.0 // filled from the transpose below
                    };
                }
                row
            })
            .collect();
        let mut m = rows;
        for i in 0..n {
            for j in 0..i {
                m[i][j] = m[j][i];
            }
        }
        m
    }

    /// Radius of the double, estimated on a structured grid: min over
    /// sampled centers of the max distance to the sample.
    pub fn radius_estimate(&self, resolution: usize) -> DoubleRadius {
        let (points, pitch) = self.structured_sample(resolution);
        let tables: Vec<Option<Vec<f64>>> = points
            .par_iter()
            .map(|p| {
                if self.is_boundary(&p.coords) {
                    None
                } else {
                    Some(self.boundary_table(&p.coords))
                }
            })
            .collect();
        let n = points.len();
        let ecc: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut worst = 0.0_f64;
                for j in 0..n {
                    if j == i {
                        continue;
                    }
                    let (p, q) = (&points[i], &points[j]);
                    let d = if p.copy == q.copy || tables[i].is_none() || tables[j].is_none() {
                        self.ambient(&p.coords, &q.coords)
                    } else {
                        // Grid-only minimum: the crossing error is second
                        // order in the pitch, already below the reported
                        // discretization tolerance.
                        let (tp, tq) = (tables[i].as_ref().unwrap(), tables[j].as_ref().unwrap());
                        tp.iter().zip(tq).map(|(a, b)| a + b).fold(f64::INFINITY, f64::min)
                    };
                    worst = worst.max(d);
                }
                worst
            })
            .collect();
        let (center, value) = ecc
            .iter()
            .cloned()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
            .expect("structured sample is nonempty");
        DoubleRadius { value, discretization: pitch, center_index: center }
    }
}

/// Ambient point of the full simplex for barycentric weights over all n+1
/// vertices.
fn full_simplex_point(simplex: &SimplexGeometry, weights: &[f64]) -> Vec<f64> {
    let dim = simplex.vertex_coords[0].len();
    let mut x = vec![0.0; dim];
    for (w, v) in weights.iter().zip(&simplex.vertex_coords) {
        for (c, vc) in x.iter_mut().zip(v) {
            *c += w * vc;
        }
    }
    super::simplex::model_normalize(simplex.k, &x)
}

/// Radius estimate together with its grid tolerance.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct DoubleRadius {
    pub value: f64,
    pub discretization: f64,
    #[serde(skip)]
    pub center_index: usize,
}

/// Distance on the double, building the boundary machinery on the fly.
/// Bulk callers should construct a [`DoubleGeometry`] once instead.
pub fn double_distance(p: &ModelPoint, q: &ModelPoint) -> Result<f64, SpaceformError> {
    if p.spec != q.spec || p.spec.kind != ModelKind::DoubleSimplex {
        return Err(SpaceformError::SpecMismatch);
    }
    DoubleGeometry::new(p.spec.n, p.spec.k)?.distance(p, q)
}

/// `rad DΔ_k^n` on a default-density structured grid.
pub fn double_radius(n: usize, k: f64) -> Result<DoubleRadius, SpaceformError> {
    let geometry = DoubleGeometry::new(n, k)?;
    let resolution = match n {
        2 => 60,
        3 => 16,
        _ => 8,
    };
    Ok(geometry.radius_estimate(resolution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaceform::ModelSpaceSpec;
    use approx::assert_abs_diff_eq;

    fn point(g: &DoubleGeometry, coords: Vec<f64>, copy: u8) -> ModelPoint {
        ModelPoint::new_unchecked(g.spec(), coords, copy)
    }

    #[test]
    fn boundary_points_of_opposite_copies_coincide() {
        let g = DoubleGeometry::with_grid(2, 0.0, 200).unwrap();
        let v = g.simplex().vertex_coords[0].clone();
        let p = point(&g, v.clone(), 0);
        let q = point(&g, v, 1);
        assert_eq!(g.distance(&p, &q).unwrap(), 0.0);
    }

    #[test]
    fn vertices_across_copies_at_edge_length() {
        for &k in &[0.0, -0.8, 0.3] {
            let g = DoubleGeometry::with_grid(2, k, 200).unwrap();
            let p = point(&g, g.simplex().vertex_coords[0].clone(), 0);
            let q = point(&g, g.simplex().vertex_coords[1].clone(), 1);
            assert_abs_diff_eq!(
                g.distance(&p, &q).unwrap(),
                g.simplex().edge_length,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn center_to_center_is_twice_the_inradius() {
        for &k in &[0.0, -1.0, 0.3] {
            let g = DoubleGeometry::with_grid(2, k, 400).unwrap();
            let c0 = point(&g, g.simplex().center.clone(), 0);
            let c1 = point(&g, g.simplex().center.clone(), 1);
            let d = g.distance(&c0, &c1).unwrap();
            assert_abs_diff_eq!(d, 2.0 * g.simplex().inradius, epsilon = 1e-6);
        }
    }

    #[test]
    fn cross_distance_dominates_ambient() {
        // Crossing the boundary can never undercut the ambient distance.
        let g = DoubleGeometry::with_grid(2, 0.0, 200).unwrap();
        let s = g.simplex();
        let a = point(&g, crate::geom::scale(&s.vertex_coords[0], 0.3), 0);
        let b = point(&g, crate::geom::scale(&s.vertex_coords[1], 0.4), 1);
        let cross = g.distance(&a, &b).unwrap();
        let ambient = crate::geom::dist_euclid(&a.coords, &b.coords);
        assert!(cross >= ambient - 1e-12, "{cross} < {ambient}");
    }

    #[test]
    fn spec_mismatch_rejected() {
        let g = DoubleGeometry::with_grid(2, 0.0, 50).unwrap();
        let p = point(&g, g.simplex().center.clone(), 0);
        let q = ModelPoint::new_unchecked(
            ModelSpaceSpec::double_simplex(2, -0.5),
            g.simplex().center.clone(),
            1,
        );
        assert!(g.distance(&p, &q).is_err());
    }

    #[test]
    fn flat_double_radius_is_one() {
        // rad DΔ_0² = 1 (k(2) = 0 is exactly the flat case).
        let r = double_radius(2, 0.0).unwrap();
        assert!((r.value - 1.0).abs() <= 0.02, "rad = {}", r.value);
    }
}
