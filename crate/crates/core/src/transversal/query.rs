//! Per-direction and per-line queries against a family.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convex::depth::DEFAULT_LP_SEED;
use crate::convex::distance::point_hull_distance;
use crate::convex::geom::{lift_point, project_point};
use crate::convex::{
    common_depth_seeded, intersect_convex, orthonormal_basis, project, ConvexBody, DepthResult,
    Point2, Poly2, UnitVec3, Vec3,
};
use crate::tolerance::DirectionClass;

use super::family::Family;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QueryError {
    #[error("direction is strictly transversal (depth {depth:e}); no Helly witness exists")]
    NoWitness { depth: f64 },
    #[error("no subfamily of at most three bodies has depth ≤ τ (family depth {depth:e})")]
    WitnessNotFound { depth: f64 },
    #[error("line misses body {body} (distance {distance:e})")]
    NotTransversal { body: usize, distance: f64 },
}

/// A directed line `origin + t·direction`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectedLine {
    pub origin: Vec3,
    pub direction: UnitVec3,
}

impl DirectedLine {
    pub fn new(origin: Vec3, direction: UnitVec3) -> Self {
        DirectedLine { origin, direction }
    }

    /// The line with direction `v` through the point of `v⊥` with frame
    /// coordinates `q`.
    pub fn from_projection(v: UnitVec3, q: Point2) -> Self {
        DirectedLine {
            origin: lift_point(q, orthonormal_basis(v)),
            direction: v,
        }
    }

    pub fn reversed(&self) -> Self {
        DirectedLine {
            origin: self.origin,
            direction: -self.direction,
        }
    }

    pub fn at(&self, t: f64) -> Vec3 {
        self.origin + self.direction.vec() * t
    }
}

/// Subfamily of two or three bodies whose projections already have depth
/// at most τ at the queried direction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HellyWitness {
    pub indices: Vec<usize>,
    pub depth_at_v: f64,
}

impl Family {
    /// Projections of all bodies along `v`.
    pub fn projections(&self, v: UnitVec3) -> Vec<Poly2> {
        self.bodies().iter().map(|b| project(b, v)).collect()
    }

    /// Signed depth of `⋂ p_v(K)`. Evaluated at the antipodal representative
    /// of `v`, so `v` and `-v` give identical depths; the witness is
    /// reported in the frame of `v` itself.
    pub fn direction_depth(&self, v: UnitVec3) -> DepthResult {
        self.direction_depth_seeded(v, DEFAULT_LP_SEED)
    }

    pub fn direction_depth_seeded(&self, v: UnitVec3, seed: u64) -> DepthResult {
        let (rep, flipped) = v.antipodal_canonical();
        let polys = self.projections(rep);
        let mut r = common_depth_seeded(&polys, seed).expect("family projections are nonempty");
        if flipped {
            // frame(-v) = (e1, -e2)
            r.witness.y = -r.witness.y;
        }
        r
    }

    pub fn classify_direction(&self, v: UnitVec3) -> DirectionClass {
        self.tolerances().classify(self.direction_depth(v).depth)
    }

    /// Depth of the subfamily `indices` at `v`.
    pub fn subfamily_depth(&self, indices: &[usize], v: UnitVec3) -> DepthResult {
        let (rep, flipped) = v.antipodal_canonical();
        let polys: Vec<Poly2> = indices
            .iter()
            .map(|&i| project(&self.bodies()[i], rep))
            .collect();
        let mut r = common_depth_seeded(&polys, DEFAULT_LP_SEED).expect("nonempty projections");
        if flipped {
            r.witness.y = -r.witness.y;
        }
        r
    }

    /// The fiber over `v`: the common intersection of the projections, as a
    /// convex polygon in the frame of `v`. `None` unless `v` is strictly
    /// transversal.
    pub fn fiber_polygon(&self, v: UnitVec3) -> Option<Poly2> {
        if self.direction_depth(v).depth <= self.tolerances().tau {
            return None;
        }
        intersect_convex(&self.projections(v))
    }

    /// Smallest subfamily (pairs before triples, lexicographic within a
    /// size) whose projected depth at `v` is at most τ.
    pub fn helly_witness(&self, v: UnitVec3) -> Result<HellyWitness, QueryError> {
        let tau = self.tolerances().tau;
        let depth = self.direction_depth(v).depth;
        if depth > tau {
            return Err(QueryError::NoWitness { depth });
        }
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let d = self.subfamily_depth(&[i, j], v).depth;
                if d <= tau {
                    return Ok(HellyWitness {
                        indices: vec![i, j],
                        depth_at_v: d,
                    });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let d = self.subfamily_depth(&[i, j, k], v).depth;
                    if d <= tau {
                        return Ok(HellyWitness {
                            indices: vec![i, j, k],
                            depth_at_v: d,
                        });
                    }
                }
            }
        }
        Err(QueryError::WitnessNotFound { depth })
    }

    pub fn is_line_transversal(&self, line: &DirectedLine) -> bool {
        line_meets_all(self.bodies(), line, self.tolerances().tau_line)
    }

    /// Order in which `line` meets the bodies.
    pub fn geometric_permutation(&self, line: &DirectedLine) -> Result<Vec<usize>, QueryError> {
        geometric_permutation(self.bodies(), line, self.tolerances().tau_line)
    }
}

/// Distance from the line to the body: the planar distance between the
/// projections of the line and of the body along the line's direction.
pub fn line_body_distance(body: &ConvexBody, line: &DirectedLine) -> f64 {
    let frame = orthonormal_basis(line.direction);
    let poly = project(body, line.direction);
    poly.distance_to(project_point(line.origin, frame))
}

/// True when the line passes within `tau_line` of every body.
pub fn line_meets_all(bodies: &[ConvexBody], line: &DirectedLine, tau_line: f64) -> bool {
    bodies
        .iter()
        .all(|b| line_body_distance(b, line) < tau_line)
}

/// Parameter interval of the points of `line` within `tol` of `body`, or
/// the closest approach distance when the line misses.
fn incidence_interval(body: &ConvexBody, line: &DirectedLine, tol: f64) -> Result<(f64, f64), f64> {
    let verts = body.vertices();
    let d = line.direction.vec();
    let (mut lo, mut hi) = verts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            let t = d.dot(*v - line.origin);
            (lo.min(t), hi.max(t))
        });
    lo -= tol;
    hi += tol;
    let dist = |t: f64| point_hull_distance(verts, line.at(t));

    // golden-section search for the closest approach; distance is convex in t
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - phi * (b - a);
    let mut e = a + phi * (b - a);
    let (mut fc, mut fe) = (dist(c), dist(e));
    for _ in 0..90 {
        if fc <= fe {
            b = e;
            e = c;
            fe = fc;
            c = b - phi * (b - a);
            fc = dist(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + phi * (b - a);
            fe = dist(e);
        }
        if b - a <= 1e-15 * (1.0 + hi.abs().max(lo.abs())) {
            break;
        }
    }
    let t_star = 0.5 * (a + b);
    let best = dist(t_star);
    if best > tol {
        return Err(best);
    }
    let boundary = |mut inside: f64, mut outside: f64| {
        if dist(outside) <= tol {
            return outside;
        }
        for _ in 0..60 {
            let mid = 0.5 * (inside + outside);
            if dist(mid) <= tol {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };
    Ok((boundary(t_star, lo), boundary(t_star, hi)))
}

/// Body indices sorted by the entry parameter along the directed line,
/// ties broken by index. A body met in a piece shorter than `tau_line` is
/// placed at the midpoint of that piece.
pub fn geometric_permutation(
    bodies: &[ConvexBody],
    line: &DirectedLine,
    tau_line: f64,
) -> Result<Vec<usize>, QueryError> {
    let mut keyed = Vec::with_capacity(bodies.len());
    for (i, body) in bodies.iter().enumerate() {
        let distance = line_body_distance(body, line);
        if distance >= tau_line {
            return Err(QueryError::NotTransversal { body: i, distance });
        }
        let (t0, t1) = incidence_interval(body, line, tau_line)
            .map_err(|distance| QueryError::NotTransversal { body: i, distance })?;
        let key = if t1 - t0 < tau_line {
            0.5 * (t0 + t1)
        } else {
            t0
        };
        keyed.push((key, i));
    }
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(keyed.into_iter().map(|(_, i)| i).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cubes() -> Family {
        Family::new(vec![
            ConvexBody::cube("bottom", Vec3::new(0.0, 0.0, -3.0), 2.0).unwrap(),
            ConvexBody::cube("top", Vec3::new(0.0, 0.0, 3.0), 2.0).unwrap(),
        ])
        .unwrap()
    }

    fn ruled() -> Family {
        let seg = |i: f64| {
            ConvexBody::segment(
                format!("S{i}"),
                Vec3::new(i, 1.0, i),
                Vec3::new(i, 2.0, 2.0 * i),
            )
            .unwrap()
        };
        Family::new(vec![seg(1.0), seg(2.0), seg(3.0)]).unwrap()
    }

    fn ruled_line(b: f64) -> DirectedLine {
        DirectedLine::new(
            Vec3::new(0.0, b, 0.0),
            UnitVec3::from_xyz(1.0, 0.0, b).unwrap(),
        )
    }

    #[test]
    fn cube_depths() {
        let f = cubes();
        assert!((f.direction_depth(UnitVec3::Z).depth - 1.0).abs() < 1e-9);
        // along x the squares are [2,4] and [-4,-2] in z: gap 4
        assert!((f.direction_depth(UnitVec3::X).depth + 2.0).abs() < 1e-9);
        assert_eq!(
            f.classify_direction(UnitVec3::Z),
            DirectionClass::Transversal
        );
        assert_eq!(
            f.classify_direction(UnitVec3::X),
            DirectionClass::NonTransversal
        );
    }

    #[test]
    fn cube_fiber_is_the_square() {
        let f = cubes();
        let fiber = f.fiber_polygon(UnitVec3::Z).unwrap();
        assert_eq!(fiber.len(), 4);
        assert!((fiber.area() - 4.0).abs() < 1e-9);
        assert!(f.fiber_polygon(UnitVec3::X).is_none());
    }

    #[test]
    fn cube_separating_circle() {
        let y = cubes().separating_circles();
        assert_eq!(y.len(), 1);
        assert!((y.circles[0].normal.vec() - Vec3::new(0.0, 0.0, 1.0)).norm() < 1e-12);
        assert_eq!(y.circles[0].pair, (0, 1));
    }

    #[test]
    fn separating_circles_are_non_transversal() {
        for f in [cubes(), ruled()] {
            let tau = f.tolerances().tau;
            for c in &f.separating_circles().circles {
                for u in c.sample(360) {
                    assert!(f.direction_depth(u).depth < tau, "{u}");
                }
            }
        }
    }

    #[test]
    fn ruled_lines_inside_the_band_are_transversal() {
        let f = ruled();
        assert!(f.is_line_transversal(&ruled_line(1.5)));
        assert!(!f.is_line_transversal(&ruled_line(3.0)));
        let tau = f.tolerances().tau;
        let d = f.direction_depth(ruled_line(1.5).direction).depth;
        assert!(d.abs() <= tau, "{d}");
        assert!(f.direction_depth(ruled_line(3.0).direction).depth < -tau);
    }

    #[test]
    fn permutations_along_ruled_line() {
        let f = ruled();
        let l = ruled_line(1.5);
        assert_eq!(f.geometric_permutation(&l).unwrap(), vec![0, 1, 2]);
        assert_eq!(
            f.geometric_permutation(&l.reversed()).unwrap(),
            vec![2, 1, 0]
        );
        assert!(matches!(
            f.geometric_permutation(&ruled_line(3.0)),
            Err(QueryError::NotTransversal { .. })
        ));
    }

    #[test]
    fn permutation_along_cube_axis() {
        let f = cubes();
        let l = DirectedLine::new(Vec3::ZERO, UnitVec3::Z);
        assert_eq!(f.geometric_permutation(&l).unwrap(), vec![0, 1]);
    }

    #[test]
    fn single_body_line_through_vertex() {
        let c = ConvexBody::cube("c", Vec3::ZERO, 2.0).unwrap();
        let l = DirectedLine::new(
            Vec3::new(1.0, 1.0, 1.0),
            UnitVec3::from_xyz(1.0, -2.0, 0.5).unwrap(),
        );
        assert!(line_meets_all(&[c], &l, 1e-9));
    }

    #[test]
    fn ball_tangency_witness() {
        let f = Family::new(vec![
            ConvexBody::ball("a", Vec3::new(0.0, 2.0, 0.0), 1.0, 200).unwrap(),
            ConvexBody::ball("b", Vec3::new(0.0, -2.0, 0.0), 1.0, 200).unwrap(),
        ])
        .unwrap();
        // bisect the polar angle from z for the discrete tangency
        let at = |t: f64| UnitVec3::from_xyz(0.0, t.sin(), t.cos()).unwrap();
        let (mut lo, mut hi) = (0.0, std::f64::consts::FRAC_PI_2);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if f.direction_depth(at(mid)).depth < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - std::f64::consts::FRAC_PI_3).abs() < 0.01, "{lo}");
        let w = f.helly_witness(at(lo)).unwrap();
        assert_eq!(w.indices, vec![0, 1]);
        assert!(w.depth_at_v.abs() <= f.tolerances().tau);
        assert!(matches!(
            f.helly_witness(UnitVec3::Y),
            Err(QueryError::NoWitness { .. })
        ));
    }

    #[test]
    fn fiber_contains_witness() {
        let f = cubes();
        for k in 0..50 {
            let a = 0.01 * k as f64;
            let v = UnitVec3::from_xyz(a.sin(), 0.3 * a.sin(), a.cos()).unwrap();
            let r = f.direction_depth(v);
            if r.depth > f.tolerances().tau {
                let fiber = f.fiber_polygon(v).unwrap();
                assert!(fiber.is_strictly_convex());
                assert!(fiber.contains(r.witness, 1e-9));
            }
        }
    }

    fn scattered() -> Family {
        Family::new(vec![
            ConvexBody::new(
                "a",
                vec![
                    Vec3::new(0.0, 0.0, 0.0),
                    Vec3::new(1.0, 0.2, 0.1),
                    Vec3::new(0.3, 1.1, 0.0),
                    Vec3::new(0.2, 0.3, 0.9),
                ],
            )
            .unwrap(),
            ConvexBody::cube("b", Vec3::new(0.5, 0.4, 3.0), 1.2).unwrap(),
            ConvexBody::ball("c", Vec3::new(-0.3, 0.8, -2.5), 0.7, 80).unwrap(),
        ])
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn depth_is_antipodally_symmetric(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
            prop_assume!(x * x + y * y + z * z > 1e-6);
            let f = scattered();
            let v = UnitVec3::from_xyz(x, y, z).unwrap();
            let a = f.direction_depth(v).depth;
            let b = f.direction_depth(-v).depth;
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }
}
