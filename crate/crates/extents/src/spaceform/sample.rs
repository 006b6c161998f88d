//! Deterministic seeded samplers turning model spaces into finite metric
//! spaces.
//!
//! Spheres sample by normalizing ambient Gaussians; balls and simplices by
//! radial densities plus rejection; intervals by an endpoint-forced grid
//! with jitter. The output always passes metric validation, with the
//! provenance recording the spec and seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::double::DoubleGeometry;
use super::simplex::build_simplex;
use super::{distance, domain, ModelKind, ModelPoint, ModelSpaceSpec, SpaceformError};
use crate::geom;
use crate::metric::{FiniteMetricSpace, MetricError, Provenance, Tolerances};

/// Triangle-inequality slack for sampled doubles: the boundary-crossing
/// search leaves defects at the refinement scale.
pub const DOUBLE_SAMPLE_TOL: f64 = 1e-5;

#[derive(Debug, thiserror::Error)]
pub enum SampleError {
    #[error(transparent)]
    Spaceform(#[from] SpaceformError),
    #[error("sampled matrix failed validation: {0}")]
    Metric(#[from] MetricError),
}

/// Draw `count` points from the model space and assemble the validated
/// distance matrix. The same `(spec, count, seed)` always produces the
/// identical space.
pub fn sample_model_space(
    spec: &ModelSpaceSpec,
    count: usize,
    seed: u64,
) -> Result<FiniteMetricSpace, SampleError> {
    spec.validate()?;
    if count == 0 {
        return Err(SpaceformError::Domain("sample count must be positive".into()).into());
    }
    let points = sample_points(spec, count, seed)?;
    let tol = Tolerances {
        tol_metric: match spec.kind {
            ModelKind::DoubleSimplex => DOUBLE_SAMPLE_TOL,
            _ => 1e-9,
        },
        ..Tolerances::default()
    };
    let matrix = pairwise_matrix(spec, &points)?;
    let space = FiniteMetricSpace::from_matrix(
        &matrix,
        None,
        Provenance::SampledFrom { spec: *spec, seed },
        &tol,
    )?;
    Ok(space)
}

/// The sampled points themselves (same stream as [`sample_model_space`]).
pub fn sample_points(
    spec: &ModelSpaceSpec,
    count: usize,
    seed: u64,
) -> Result<Vec<ModelPoint>, SpaceformError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match spec.kind {
        ModelKind::Sphere => Ok((0..count).map(|_| sphere_point(spec, &mut rng)).collect()),
        ModelKind::Projective => Ok((0..count)
            .map(|_| {
                let mut p = sphere_point(spec, &mut rng);
                canonicalize_line(&mut p.coords);
                p
            })
            .collect()),
        ModelKind::Ball => Ok((0..count).map(|_| ball_point(spec, &mut rng)).collect()),
        ModelKind::Interval => Ok(interval_points(spec, count, &mut rng)),
        ModelKind::Simplex => simplex_points(spec, count, &mut rng),
        ModelKind::DoubleSimplex => double_points(spec, count, &mut rng),
    }
}

fn pairwise_matrix(
    spec: &ModelSpaceSpec,
    points: &[ModelPoint],
) -> Result<Vec<Vec<f64>>, SpaceformError> {
    if spec.kind == ModelKind::DoubleSimplex {
        let geometry = DoubleGeometry::new(spec.n, spec.k)?;
        return Ok(geometry.distance_matrix(points));
    }
    let n = points.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0.0
                    } else {
                        // Only sphere-family kinds reach here; distance is
                        // infallible once specs match.
                        distance(&points[i], &points[j]).expect("specs match")
                    }
                })
                .collect()
        })
        .collect();
    // Symmetrize bitwise: take the (i<j) entry for both triangles.
    let mut m = rows;
    for i in 0..n {
        for j in 0..i {
            m[i][j] = m[j][i];
        }
    }
    Ok(m)
}

fn gaussian_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = geom::norm(&v);
        if n > 1e-12 {
            return v;
        }
    }
}

fn sphere_point(spec: &ModelSpaceSpec, rng: &mut ChaCha8Rng) -> ModelPoint {
    let radius = 1.0 / spec.k.sqrt();
    let g = gaussian_vector(spec.n + 1, rng);
    let coords = geom::scale(&g, radius / geom::norm(&g));
    ModelPoint::new_unchecked(*spec, coords, 0)
}

/// Canonical representative of a projective line: flip the sign so the
/// first coordinate of noticeable magnitude is positive.
fn canonicalize_line(coords: &mut [f64]) {
    if let Some(&lead) = coords.iter().find(|c| c.abs() > 1e-12) {
        if lead < 0.0 {
            for c in coords.iter_mut() {
                *c = -*c;
            }
        }
    }
}

/// Geodesic sphere radius function: circumference scale at distance `r`.
fn radial_scale(k: f64, r: f64) -> f64 {
    if k > 0.0 {
        (r * k.sqrt()).sin() / k.sqrt()
    } else if k == 0.0 {
        r
    } else {
        (r * (-k).sqrt()).sinh() / (-k).sqrt()
    }
}

/// Radius with density ∝ radial_scale(k, r)^(n-1) on [0, R], by rejection
/// under a constant envelope.
fn sample_radius(n: usize, k: f64, r_max: f64, rng: &mut ChaCha8Rng) -> f64 {
    let peak_at = if k > 0.0 {
        r_max.min(std::f64::consts::FRAC_PI_2 / k.sqrt())
    } else {
        r_max
    };
    let peak = radial_scale(k, peak_at).powi(n as i32 - 1);
    loop {
        let r = rng.gen::<f64>() * r_max;
        let density = radial_scale(k, r).powi(n as i32 - 1);
        if rng.gen::<f64>() * peak <= density {
            return r;
        }
    }
}

/// Point at geodesic distance `r` from the model center along a uniform
/// tangent direction.
fn point_at_radius(spec: &ModelSpaceSpec, r: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let g = gaussian_vector(spec.n, rng);
    let u = geom::scale(&g, 1.0 / geom::norm(&g));
    let k = spec.k;
    if k == 0.0 {
        geom::scale(&u, r)
    } else if k > 0.0 {
        let rk = k.sqrt();
        let mut out: Vec<f64> = u.iter().map(|x| (r * rk).sin() * x / rk).collect();
        out.push((r * rk).cos() / rk);
        out
    } else {
        let s = (-k).sqrt();
        let mut out: Vec<f64> = u.iter().map(|x| (r * s).sinh() * x / s).collect();
        out.push((r * s).cosh() / s);
        out
    }
}

fn ball_point(spec: &ModelSpaceSpec, rng: &mut ChaCha8Rng) -> ModelPoint {
    let r = sample_radius(spec.n, spec.k, spec.r, rng);
    ModelPoint::new_unchecked(*spec, point_at_radius(spec, r, rng), 0)
}

/// Endpoints forced, remaining points stratified with jitter.
fn interval_points(spec: &ModelSpaceSpec, count: usize, rng: &mut ChaCha8Rng) -> Vec<ModelPoint> {
    let l = spec.r;
    let mut xs = Vec::with_capacity(count);
    if count == 1 {
        xs.push(l / 2.0);
    } else {
        xs.push(0.0);
        xs.push(l);
        let interior = count - 2;
        for j in 0..interior {
            let u: f64 = rng.gen();
            xs.push((j as f64 + u) * l / interior as f64);
        }
    }
    xs.into_iter()
        .map(|x| ModelPoint::new_unchecked(*spec, vec![x.clamp(0.0, l)], 0))
        .collect()
}

/// Uniform on the simplex: uniform in the circumscribed ball, rejected to
/// the vertex cone.
fn simplex_points(
    spec: &ModelSpaceSpec,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ModelPoint>, SpaceformError> {
    let geometry = build_simplex(spec.n, spec.k)?;
    let ball = ModelSpaceSpec::ball(spec.n, spec.k, 1.0);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 200_000 * count {
            return Err(domain("simplex rejection sampling failed to converge"));
        }
        let r = sample_radius(spec.n, spec.k, 1.0, rng);
        let coords = point_at_radius(&ball, r, rng);
        if geometry.contains(&coords, 1e-12) {
            out.push(ModelPoint::new_unchecked(*spec, coords, 0));
        }
    }
    Ok(out)
}

/// Double sampler: deterministic structure (vertices, copy centers, facet
/// grids along the boundary) topped up with uniform interior points split
/// between the copies.
fn double_points(
    spec: &ModelSpaceSpec,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ModelPoint>, SpaceformError> {
    let geometry = DoubleGeometry::with_grid(spec.n, spec.k, 64)?;
    let simplex = geometry.simplex();
    let mut out: Vec<ModelPoint> = Vec::with_capacity(count);

    // Vertices first: they realize the extenders the theorems care about.
    for v in &simplex.vertex_coords {
        if out.len() < count {
            out.push(ModelPoint::new_unchecked(*spec, v.clone(), 0));
        }
    }
    for copy in 0..2u8 {
        if out.len() < count {
            out.push(ModelPoint::new_unchecked(*spec, simplex.center.clone(), copy));
        }
    }
    // Boundary grid: a quarter of the budget, deduplicated.
    let boundary_budget = count / 4;
    let per_facet = (boundary_budget / (spec.n + 1)).max(1);
    let resolution = super::double::boundary_resolution(spec.n, per_facet);
    let grid = super::double::facet_weight_grid(spec.n, resolution);
    'grid: for facet in 0..=spec.n {
        for w in &grid {
            if out.len() >= count || out.len() >= simplex.vertex_coords.len() + 2 + boundary_budget
            {
                break 'grid;
            }
            // Skip grid corners (vertices already included) and dedupe
            // points shared between facets (sub-face points are emitted by
            // the lowest facet index containing them).
            if w.iter().any(|&x| x == 1.0) {
                continue;
            }
            if w.iter().enumerate().any(|(i, &x)| {
                x == 0.0 && facet_vertex_index(facet, i) < facet
            }) {
                continue;
            }
            let coords = simplex.facet_point(facet, w);
            out.push(ModelPoint::new_unchecked(*spec, coords, 0));
        }
    }
    // Interior fill, alternating copies.
    let interior_spec = ModelSpaceSpec::simplex(spec.n, spec.k);
    let mut copy = 0u8;
    let interior = simplex_points(&interior_spec, count.saturating_sub(out.len()), rng)?;
    for p in interior {
        out.push(ModelPoint::new_unchecked(*spec, p.coords, copy));
        copy ^= 1;
    }
    Ok(out)
}

/// Global vertex index of the `i`-th vertex of the facet omitting `omit`.
fn facet_vertex_index(omit: usize, i: usize) -> usize {
    if i < omit {
        i
    } else {
        i + 1
    }
}
