//! Convex bodies stored as the hull of finitely many vertices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::geom::{orthonormal_basis, project_point, UnitVec3, Vec3};
use super::hull2d::{convex_hull, Poly2};

/// Default facet count for discretized balls.
pub const DEFAULT_BALL_FACETS: usize = 80;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BodyError {
    #[error("body `{0}` has no vertices")]
    NoVertices(String),
    #[error("body `{0}` has a non-finite coordinate")]
    NonFinite(String),
    #[error("ball radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("ball facet count {0} outside 8..=4000")]
    BadFacetCount(usize),
}

/// Convex hull of a nonempty vertex list. The vertices need not be in
/// convex position, and the hull may be lower dimensional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexBody {
    pub label: String,
    vertices: Vec<Vec3>,
}

impl ConvexBody {
    pub fn new(label: impl Into<String>, vertices: Vec<Vec3>) -> Result<Self, BodyError> {
        let label = label.into();
        if vertices.is_empty() {
            return Err(BodyError::NoVertices(label));
        }
        if vertices
            .iter()
            .any(|v| !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite()))
        {
            return Err(BodyError::NonFinite(label));
        }
        Ok(ConvexBody { label, vertices })
    }

    /// Segment between two points.
    pub fn segment(label: impl Into<String>, a: Vec3, b: Vec3) -> Result<Self, BodyError> {
        Self::new(label, vec![a, b])
    }

    /// Axis-aligned box from two opposite corners.
    pub fn cuboid(label: impl Into<String>, lo: Vec3, hi: Vec3) -> Result<Self, BodyError> {
        let mut v = Vec::with_capacity(8);
        for &x in &[lo.x, hi.x] {
            for &y in &[lo.y, hi.y] {
                for &z in &[lo.z, hi.z] {
                    v.push(Vec3::new(x, y, z));
                }
            }
        }
        Self::new(label, v)
    }

    /// Axis-aligned cube of the given side length.
    pub fn cube(label: impl Into<String>, center: Vec3, side: f64) -> Result<Self, BodyError> {
        let h = Vec3::new(side, side, side) * 0.5;
        Self::cuboid(label, center - h, center + h)
    }

    /// Polytope circumscribing the ball with `facets` facets, each tangent
    /// to the sphere at a point of a spherical Fibonacci set.
    pub fn ball(
        label: impl Into<String>,
        center: Vec3,
        radius: f64,
        facets: usize,
    ) -> Result<Self, BodyError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(BodyError::BadRadius(radius));
        }
        if !(8..=4000).contains(&facets) {
            return Err(BodyError::BadFacetCount(facets));
        }
        let dirs = circumscribing_directions(facets);
        let verts = dirs.into_iter().map(|u| center + u * radius).collect();
        Self::new(label, verts)
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn centroid(&self) -> Vec3 {
        let s = self.vertices.iter().fold(Vec3::ZERO, |acc, &v| acc + v);
        s / self.vertices.len() as f64
    }

    /// Largest value of `dir·p` over the body.
    pub fn support(&self, dir: Vec3) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(dir))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Orthogonal projection onto `v⊥` in the frame of [`orthonormal_basis`].
    pub fn project(&self, v: UnitVec3) -> Poly2 {
        project(self, v)
    }

    /// Replaces every vertex by `vertex + eps·u` for each `u` in `dirs`.
    pub fn minkowski_with_points(&self, dirs: &[Vec3], eps: f64) -> ConvexBody {
        let vertices = self
            .vertices
            .iter()
            .flat_map(|&v| dirs.iter().map(move |&u| v + u * eps))
            .collect();
        ConvexBody {
            label: self.label.clone(),
            vertices,
        }
    }
}

/// `p_v(K)`: the 2D convex hull of the body's vertices projected onto `v⊥`.
pub fn project(body: &ConvexBody, v: UnitVec3) -> Poly2 {
    let frame = orthonormal_basis(v);
    let pts: Vec<_> = body
        .vertices
        .iter()
        .map(|&p| project_point(p, frame))
        .collect();
    convex_hull(&pts)
}

/// Axis-aligned bounding-box diagonal of a set of bodies.
pub fn scene_diameter<'a>(bodies: impl IntoIterator<Item = &'a ConvexBody>) -> f64 {
    let mut lo = Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut hi = -lo;
    for b in bodies {
        for v in b.vertices() {
            lo = Vec3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
            hi = Vec3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
        }
    }
    if lo.x > hi.x {
        0.0
    } else {
        (hi - lo).norm()
    }
}

/// Vertices of the polytope cut out by the planes tangent to the unit
/// sphere at `facets` Fibonacci points. Every vertex is the meeting point of
/// three tangent planes of nearby points that violates no other plane.
fn circumscribing_directions(facets: usize) -> Vec<Vec3> {
    let n = facets;
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let pts: Vec<Vec3> = (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            Vec3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect();
    let near = |i: usize, k: usize| -> Vec<usize> {
        let mut others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let k = k.min(others.len());
        let dist = |j: &usize| (pts[*j] - pts[i]).norm_sq();
        if k < others.len() {
            others.select_nth_unstable_by(k, |a, b| dist(a).total_cmp(&dist(b)));
            others.truncate(k);
        }
        others.sort_by(|a, b| dist(a).total_cmp(&dist(b)));
        others
    };
    let mut out: Vec<Vec3> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in 0..n {
        let check = near(i, 30);
        let cand = &check[..check.len().min(12)];
        for (s, &j) in cand.iter().enumerate() {
            for &l in &cand[s + 1..] {
                let (a, b, c) = (pts[i], pts[j], pts[l]);
                let det = a.dot(b.cross(c));
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = (b.cross(c) + c.cross(a) + a.cross(b)) / det;
                if check.iter().all(|&m| pts[m].dot(x) <= 1.0 + 1e-12) {
                    let key = [x.x, x.y, x.z].map(|t| (t * 1e9).round() as i64);
                    if seen.insert(key) {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::f64::consts::TAU;

    use super::*;
    use crate::convex::geom::Point2;

    #[test]
    fn cube_projects_to_square() {
        let c = ConvexBody::cube("c", Vec3::ZERO, 2.0).unwrap();
        let p = c.project(UnitVec3::Z);
        assert_eq!(p.len(), 4);
        for v in &p.vertices {
            assert!((v.x.abs() - 1.0).abs() < 1e-15 && (v.y.abs() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn segment_projects_to_segment() {
        let s =
            ConvexBody::segment("s", Vec3::new(1.0, 1.0, 1.0), Vec3::new(1.0, 2.0, 2.0)).unwrap();
        let p = s.project(UnitVec3::Z);
        assert_eq!(
            p.vertices,
            vec![Point2::new(1.0, 1.0), Point2::new(1.0, 2.0)]
        );
    }

    #[test]
    fn singleton_projects_to_point() {
        let s = ConvexBody::new("p", vec![Vec3::new(1.0, 2.0, 3.0)]).unwrap();
        let v = UnitVec3::from_xyz(1.0, 1.0, 1.0).unwrap();
        assert_eq!(s.project(v).len(), 1);
        assert_eq!(s.project(v), s.project(v));
    }

    #[test]
    fn rejects_empty_and_nonfinite() {
        assert!(matches!(
            ConvexBody::new("e", vec![]),
            Err(BodyError::NoVertices(_))
        ));
        assert!(matches!(
            ConvexBody::new("n", vec![Vec3::new(f64::NAN, 0.0, 0.0)]),
            Err(BodyError::NonFinite(_))
        ));
        assert!(ConvexBody::ball("b", Vec3::ZERO, -1.0, 80).is_err());
        assert!(ConvexBody::ball("b", Vec3::ZERO, 1.0, 2).is_err());
    }

    #[test]
    fn ball_circumscribes_sphere() {
        let b = ConvexBody::ball("b", Vec3::ZERO, 1.0, 80).unwrap();
        // simple polytope with 80 facets: V = 2F - 4
        assert_eq!(b.vertices().len(), 156);
        let mut worst = f64::INFINITY;
        for i in 0..2000 {
            let t = i as f64 * 0.61803398875;
            let z = 1.0 - 2.0 * ((i as f64 + 0.5) / 2000.0);
            let r = (1.0 - z * z).sqrt();
            let u = Vec3::new(r * (t * TAU).cos(), r * (t * TAU).sin(), z);
            worst = worst.min(b.support(u));
        }
        assert!(worst >= 1.0 - 1e-9, "support dips to {worst}");
        assert!(b.vertices().iter().all(|v| v.norm() < 1.2));
    }

    #[test]
    fn finer_balls_are_tighter() {
        let coarse = ConvexBody::ball("b", Vec3::ZERO, 1.0, 80).unwrap();
        let fine = ConvexBody::ball("b", Vec3::ZERO, 1.0, 200).unwrap();
        let max_norm = |b: &ConvexBody| b.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
        let (rc, rf) = (max_norm(&coarse), max_norm(&fine));
        assert!(rf < rc && rf > 1.0);
    }
}
