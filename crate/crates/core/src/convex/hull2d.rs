//! Planar convex hulls, halfplane representations and convex clipping.

use serde::{Deserialize, Serialize};

use super::geom::Point2;

/// A convex polygon with counterclockwise vertices and no three retained
/// vertices collinear. One vertex is a point, two are a segment.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Poly2 {
    pub vertices: Vec<Point2>,
}

/// Closed halfplane `normal·q ≤ offset` with a unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane2 {
    pub normal: Point2,
    pub offset: f64,
}

impl HalfPlane2 {
    /// Signed clearance of `q`: positive inside, negative outside.
    pub fn clearance(&self, q: Point2) -> f64 {
        self.offset - self.normal.dot(q)
    }
}

impl Poly2 {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Polygon with at least three vertices (nonzero area).
    pub fn is_proper(&self) -> bool {
        self.vertices.len() >= 3
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        0.5 * (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum::<f64>()
    }

    /// Diameter of the axis-aligned bounding box.
    pub fn bbox_diameter(&self) -> f64 {
        bbox_diameter(self.vertices.iter().copied())
    }

    /// Halfplane description. Segments become two opposite halfplanes plus
    /// two end caps; a point becomes four axis halfplanes.
    pub fn halfplanes(&self) -> Vec<HalfPlane2> {
        let v = &self.vertices;
        match v.len() {
            0 => Vec::new(),
            1 => {
                let p = v[0];
                vec![
                    HalfPlane2 {
                        normal: Point2::new(1.0, 0.0),
                        offset: p.x,
                    },
                    HalfPlane2 {
                        normal: Point2::new(-1.0, 0.0),
                        offset: -p.x,
                    },
                    HalfPlane2 {
                        normal: Point2::new(0.0, 1.0),
                        offset: p.y,
                    },
                    HalfPlane2 {
                        normal: Point2::new(0.0, -1.0),
                        offset: -p.y,
                    },
                ]
            }
            2 => {
                let (p, q) = (v[0], v[1]);
                let d = q - p;
                let len = d.norm();
                let d = d * (1.0 / len);
                let n = d.perp();
                vec![
                    HalfPlane2 {
                        normal: n,
                        offset: n.dot(p),
                    },
                    HalfPlane2 {
                        normal: n * -1.0,
                        offset: -n.dot(p),
                    },
                    HalfPlane2 {
                        normal: d,
                        offset: d.dot(q),
                    },
                    HalfPlane2 {
                        normal: d * -1.0,
                        offset: -d.dot(p),
                    },
                ]
            }
            n => (0..n)
                .map(|i| {
                    let (p, q) = (v[i], v[(i + 1) % n]);
                    let e = q - p;
                    let len = e.norm();
                    let normal = Point2::new(e.y / len, -e.x / len);
                    HalfPlane2 {
                        normal,
                        offset: normal.dot(p),
                    }
                })
                .collect(),
        }
    }

    /// Smallest clearance of `q` over the halfplane description; positive
    /// means strictly inside.
    pub fn clearance(&self, q: Point2) -> f64 {
        self.halfplanes()
            .iter()
            .map(|h| h.clearance(q))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, q: Point2, tol: f64) -> bool {
        self.clearance(q) >= -tol
    }

    /// Euclidean distance from `q` to the polygon (zero inside).
    pub fn distance_to(&self, q: Point2) -> f64 {
        let v = &self.vertices;
        match v.len() {
            0 => f64::INFINITY,
            1 => (q - v[0]).norm(),
            2 => segment_distance(q, v[0], v[1]),
            n => {
                if self.clearance(q) >= 0.0 {
                    return 0.0;
                }
                (0..n)
                    .map(|i| segment_distance(q, v[i], v[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// True when every interior angle turns left (no reflex or flat corner).
    pub fn is_strictly_convex(&self) -> bool {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return true;
        }
        (0..n).all(|i| {
            let a = v[i];
            let b = v[(i + 1) % n];
            let c = v[(i + 2) % n];
            (b - a).cross(c - b) > 0.0
        })
    }
}

pub(crate) fn bbox_diameter(points: impl Iterator<Item = Point2>) -> f64 {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut any = false;
    for p in points {
        any = true;
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    if any {
        (hi - lo).norm()
    } else {
        0.0
    }
}

fn segment_distance(q: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let l2 = d.dot(d);
    if l2 == 0.0 {
        return (q - a).norm();
    }
    let t = ((q - a).dot(d) / l2).clamp(0.0, 1.0);
    (q - (a + d * t)).norm()
}

/// Convex hull by Andrew's monotone chain, counterclockwise, dropping
/// collinear points. Degenerate inputs yield a segment or a single point.
pub fn convex_hull(points: &[Point2]) -> Poly2 {
    let mut pts: Vec<Point2> = points
        .iter()
        .copied()
        .filter(|p| p.x.is_finite() && p.y.is_finite())
        .collect();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() <= 1 {
        return Poly2 { vertices: pts };
    }
    let scale = bbox_diameter(pts.iter().copied());
    // cross products below this are treated as collinear
    let eps = 1e-13 * scale * scale;
    let turn = |o: Point2, a: Point2, b: Point2| (a - o).cross(b - o);

    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() == 2 && (hull[0] - hull[1]).norm() <= 1e-15 * (1.0 + scale) {
        hull.truncate(1);
    }
    Poly2 { vertices: hull }
}

/// Clips a convex polygon (given by its vertex cycle) to a halfplane.
pub(crate) fn clip_to_halfplane(vertices: &[Point2], h: &HalfPlane2) -> Vec<Point2> {
    let n = vertices.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        let cp = h.clearance(p);
        let cq = h.clearance(q);
        if cp >= 0.0 {
            out.push(p);
        }
        if (cp >= 0.0) != (cq >= 0.0) {
            let t = cp / (cp - cq);
            out.push(p + (q - p) * t);
        }
    }
    out
}

/// Intersection of convex polygons, or `None` when it has no area.
pub fn intersect_convex(polys: &[Poly2]) -> Option<Poly2> {
    let first = polys.first()?;
    if !first.is_proper() {
        return None;
    }
    let mut current = first.vertices.clone();
    for p in &polys[1..] {
        if !p.is_proper() {
            return None;
        }
        for h in p.halfplanes() {
            current = clip_to_halfplane(&current, &h);
            if current.len() < 3 {
                return None;
            }
        }
    }
    let hull = convex_hull(&current);
    hull.is_proper().then_some(hull)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sq(x0: f64, y0: f64, x1: f64, y1: f64) -> Poly2 {
        convex_hull(&[
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(0.0, 2.0),
            Point2::new(1.0, 1.0),
        ];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert!(h.area() > 0.0);
        assert!(h.is_strictly_convex());
    }

    #[test]
    fn degenerate_hulls() {
        let seg = convex_hull(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 2.0),
        ]);
        assert_eq!(
            seg.vertices,
            vec![Point2::new(0.0, 0.0), Point2::new(2.0, 2.0)]
        );
        let pt = convex_hull(&[Point2::new(3.0, 4.0), Point2::new(3.0, 4.0)]);
        assert_eq!(pt.vertices, vec![Point2::new(3.0, 4.0)]);
        assert!(convex_hull(&[]).is_empty());
    }

    #[test]
    fn segment_halfplanes_have_zero_width() {
        let seg = convex_hull(&[Point2::new(0.0, 0.0), Point2::new(2.0, 0.0)]);
        let hs = seg.halfplanes();
        assert_eq!(hs.len(), 4);
        assert!(seg.clearance(Point2::new(1.0, 0.0)).abs() < 1e-15);
        assert!(seg.clearance(Point2::new(1.0, 0.5)) < 0.0);
    }

    #[test]
    fn square_intersection() {
        let a = sq(-1.0, -1.0, 1.0, 1.0);
        let b = sq(0.0, -1.0, 2.0, 1.0);
        let i = intersect_convex(&[a.clone(), b]).unwrap();
        assert!((i.area() - 2.0).abs() < 1e-12);
        let far = sq(5.0, 5.0, 6.0, 6.0);
        assert!(intersect_convex(&[a, far]).is_none());
    }

    #[test]
    fn distances() {
        let a = sq(0.0, 0.0, 1.0, 1.0);
        assert_eq!(a.distance_to(Point2::new(0.5, 0.5)), 0.0);
        assert!((a.distance_to(Point2::new(2.0, 0.5)) - 1.0).abs() < 1e-15);
        let seg = convex_hull(&[Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]);
        assert!((seg.distance_to(Point2::new(0.5, 2.0)) - 2.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn hull_contains_all_inputs(pts in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1..40)) {
            let pts: Vec<Point2> = pts.into_iter().map(|(x, y)| Point2::new(x, y)).collect();
            let h = convex_hull(&pts);
            prop_assert!(h.is_strictly_convex());
            if h.is_proper() {
                prop_assert!(h.area() > 0.0);
            }
            for p in &pts {
                prop_assert!(h.distance_to(*p) <= 1e-9);
            }
        }
    }
}
