//! Small dense vector helpers shared by the model-space geometry.
//!
//! Everything operates on `&[f64]` slices; the ambient dimensions involved
//! are tiny (at most `n + 1` for the models we realize), so there is no
//! point in pulling in a matrix library.

/// Euclidean inner product.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minkowski inner product with signature (+,...,+,-): the last coordinate
/// is the timelike one used by the hyperboloid model.
pub fn minkowski_dot(a: &[f64], b: &[f64]) -> f64 {
    let m = a.len() - 1;
    dot(&a[..m], &b[..m]) - a[m] * b[m]
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|x| x * c).collect()
}

/// a + c·b
pub fn axpy(a: &[f64], c: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

pub fn dist_euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Angle between two unit vectors, stable near 0 and near π.
///
/// `2·atan2(|u−v|, |u+v|)` avoids the precision loss of `acos(dot)` at both
/// ends of the range.
pub fn unit_angle(u: &[f64], v: &[f64]) -> f64 {
    2.0 * f64::atan2(dist_euclid(u, v), norm(&add(u, v)))
}

pub fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

/// Solve the square system `a·x = b` by Gaussian elimination with partial
/// pivoting. Returns `None` for (numerically) singular systems. Dimensions
/// here are at most 8×8.
pub fn solve_linear(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-14 {
            return None;
        }
        m.swap(col, pivot);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for c in col..=n {
                m[row][c] -= f * m[col][c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = m[row][n];
        for c in row + 1..n {
            acc -= m[row][c] * x[c];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

/// Orthonormal basis of the orthogonal complement of `x` (Euclidean sense),
/// built by Gram–Schmidt over the standard basis. Used for tangent-space
/// moves on the sphere models.
pub fn orthonormal_complement(x: &[f64]) -> Vec<Vec<f64>> {
    let dim = x.len();
    let xn = norm(x);
    let unit: Vec<f64> = x.iter().map(|c| c / xn).collect();
    let mut basis: Vec<Vec<f64>> = vec![unit];
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        for b in &basis {
            let p = dot(&e, b);
            for (c, bc) in e.iter_mut().zip(b) {
                *c -= p * bc;
            }
        }
        let n = norm(&e);
        if n > 1e-8 {
            basis.push(e.iter().map(|c| c / n).collect());
        }
        if basis.len() == dim {
            break;
        }
    }
    basis.remove(0);
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn solve_small_system() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve_linear(&a, &[5.0, 10.0]).unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn singular_system_rejected() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(solve_linear(&a, &[1.0, 2.0]).is_none());
    }

    #[test]
    fn unit_angle_matches_acos_midrange() {
        let u = [1.0, 0.0, 0.0];
        let v = [0.6, 0.8, 0.0];
        assert_abs_diff_eq!(unit_angle(&u, &v), 0.6_f64.acos(), epsilon = 1e-14);
    }

    #[test]
    fn unit_angle_near_antipodal() {
        let u = [1.0, 0.0];
        let v = [-1.0, 1e-9];
        let a = unit_angle(&u, &v);
        assert!(a < std::f64::consts::PI);
        assert!(std::f64::consts::PI - a < 1e-8);
    }

    #[test]
    fn complement_is_orthonormal() {
        let x = [0.3, -1.2, 0.5, 2.0];
        let basis = orthonormal_complement(&x);
        assert_eq!(basis.len(), 3);
        for (i, b) in basis.iter().enumerate() {
            assert_abs_diff_eq!(dot(b, &x), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(norm(b), 1.0, epsilon = 1e-12);
            for other in &basis[i + 1..] {
                assert_abs_diff_eq!(dot(b, other), 0.0, epsilon = 1e-12);
            }
        }
    }
}
