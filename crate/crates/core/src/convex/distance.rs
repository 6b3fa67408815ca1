//! Minimum-norm points of convex hulls (Wolfe's algorithm).
//!
//! The hull is accessed only through a linear minimization oracle, which
//! lets the same routine run on a Minkowski difference `B − A` without
//! materializing all pairwise differences.

use super::geom::Vec3;

const MAX_MAJOR: usize = 500;

/// Point of the hull closest to the origin. `lmo(x)` must return a point of
/// the set minimizing `x·p`.
pub fn min_norm_point(lmo: impl Fn(Vec3) -> Vec3, start: Vec3) -> Vec3 {
    let mut corral: Vec<Vec3> = vec![start];
    let mut weights: Vec<f64> = vec![1.0];
    let mut x = start;
    let mut scale = start.norm_sq();

    for _ in 0..MAX_MAJOR {
        let p = lmo(x);
        scale = scale.max(p.norm_sq());
        // Wolfe's optimality test
        if x.norm_sq() - x.dot(p) <= 1e-14 * scale.max(1e-300) {
            break;
        }
        if corral.iter().any(|&s| (s - p).norm_sq() <= 1e-24 * scale) || corral.len() >= 4 {
            break;
        }
        corral.push(p);
        weights.push(0.0);

        loop {
            let Some(mu) = affine_min_weights(&corral) else {
                return x;
            };
            let y = combine(&corral, &mu);
            if mu.iter().all(|&m| m > 1e-14) {
                x = y;
                weights = mu;
                break;
            }
            // walk from x toward y until the first weight hits zero
            let mut theta = 1.0f64;
            for (w, m) in weights.iter().zip(&mu) {
                if *m <= 1e-14 && w - m > 0.0 {
                    theta = theta.min(w / (w - m));
                }
            }
            for (w, m) in weights.iter_mut().zip(&mu) {
                *w += theta * (m - *w);
            }
            let mut k = 0;
            while k < corral.len() {
                if weights[k] <= 1e-14 {
                    corral.remove(k);
                    weights.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            x = combine(&corral, &weights);
            if corral.len() == 1 {
                break;
            }
        }
    }
    x
}

fn combine(points: &[Vec3], w: &[f64]) -> Vec3 {
    points
        .iter()
        .zip(w)
        .fold(Vec3::ZERO, |acc, (&p, &m)| acc + p * m)
}

/// Barycentric weights of the minimum-norm point of the affine hull.
fn affine_min_weights(points: &[Vec3]) -> Option<Vec<f64>> {
    let k = points.len();
    if k == 1 {
        return Some(vec![1.0]);
    }
    // [G 1; 1ᵀ 0] [μ; λ] = [0; 1]
    let n = k + 1;
    let mut m = vec![vec![0.0; n + 1]; n];
    for i in 0..k {
        for j in 0..k {
            m[i][j] = points[i].dot(points[j]);
        }
        m[i][k] = 1.0;
        m[k][i] = 1.0;
    }
    m[k][n] = 1.0;
    let scale = points.iter().map(|p| p.norm_sq()).fold(1e-300, f64::max);
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() <= 1e-13 * scale.clamp(1e-300, 1.0) {
            return None;
        }
        m.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                if f != 0.0 {
                    let pivot_row = m[col].clone();
                    for (x, p) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                        *x -= f * p;
                    }
                }
            }
        }
    }
    Some((0..k).map(|i| m[i][n] / m[i][i]).collect())
}

/// Distance from `q` to the hull of `points`.
pub fn point_hull_distance(points: &[Vec3], q: Vec3) -> f64 {
    let lmo = |x: Vec3| {
        let v = points
            .iter()
            .copied()
            .min_by(|a, b| x.dot(*a).total_cmp(&x.dot(*b)))
            .expect("nonempty point set");
        v - q
    };
    min_norm_point(lmo, points[0] - q).norm()
}

/// Minimum-norm point of `conv(B) − conv(A)`: the shortest vector from a
/// point of A to a point of B.
pub fn hull_difference_min_norm(a: &[Vec3], b: &[Vec3]) -> Vec3 {
    let lmo = |x: Vec3| {
        let pb = b
            .iter()
            .copied()
            .min_by(|p, q| x.dot(*p).total_cmp(&x.dot(*q)))
            .expect("nonempty");
        let pa = a
            .iter()
            .copied()
            .max_by(|p, q| x.dot(*p).total_cmp(&x.dot(*q)))
            .expect("nonempty");
        pb - pa
    };
    min_norm_point(lmo, b[0] - a[0])
}
