//! Small fixed-size vector types used throughout the crate.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point or vector in R³.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Normalizes the vector; `None` for the zero vector or non-finite input.
    pub fn normalized(self) -> Option<UnitVec3> {
        UnitVec3::new(self)
    }

    /// Lexicographic comparison on (x, y, z).
    pub fn lex_cmp(self, o: Vec3) -> std::cmp::Ordering {
        self.x
            .total_cmp(&o.x)
            .then(self.y.total_cmp(&o.y))
            .then(self.z.total_cmp(&o.z))
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A direction on the unit sphere S².
///
/// The norm is within `1e-12` of one; construction renormalizes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec3", into = "Vec3")]
pub struct UnitVec3(Vec3);

impl UnitVec3 {
    pub const X: UnitVec3 = UnitVec3(Vec3::new(1.0, 0.0, 0.0));
    pub const Y: UnitVec3 = UnitVec3(Vec3::new(0.0, 1.0, 0.0));
    pub const Z: UnitVec3 = UnitVec3(Vec3::new(0.0, 0.0, 1.0));

    pub fn new(v: Vec3) -> Option<Self> {
        let n = v.norm();
        if !n.is_finite() || n < 1e-300 {
            return None;
        }
        let mut u = v / n;
        // one Newton step keeps the norm error well under 1e-12
        let n2 = u.norm();
        if (n2 - 1.0).abs() > 1e-15 {
            u = u / n2;
        }
        Some(UnitVec3(u))
    }

    /// Wraps a vector that is already unit length (checked in debug builds).
    pub fn new_unchecked(v: Vec3) -> Self {
        debug_assert!((v.norm() - 1.0).abs() < 1e-9, "not a unit vector: {v}");
        UnitVec3(v)
    }

    pub fn from_xyz(x: f64, y: f64, z: f64) -> Option<Self> {
        Self::new(Vec3::new(x, y, z))
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.0.dot(o)
    }

    /// Angle in radians between two directions.
    pub fn angle_to(self, o: UnitVec3) -> f64 {
        let c = self.0.dot(o.0);
        let s = self.0.cross(o.0).norm();
        s.atan2(c)
    }

    /// Representative of the pair {v, -v}: the one whose first nonzero
    /// coordinate is positive. Returns the representative and whether `self`
    /// was flipped to obtain it.
    pub fn antipodal_canonical(self) -> (UnitVec3, bool) {
        let v = self.0;
        let flip = if v.x != 0.0 {
            v.x < 0.0
        } else if v.y != 0.0 {
            v.y < 0.0
        } else {
            v.z < 0.0
        };
        if flip {
            (-self, true)
        } else {
            (self, false)
        }
    }

    /// Point at arc parameter `s ∈ [0, 1]` along the minor great arc to `to`.
    pub fn slerp(self, to: UnitVec3, s: f64) -> UnitVec3 {
        let omega = self.angle_to(to);
        if omega < 1e-15 {
            return self;
        }
        let so = omega.sin();
        let a = ((1.0 - s) * omega).sin() / so;
        let b = (s * omega).sin() / so;
        UnitVec3::new(self.0 * a + to.0 * b).unwrap_or(self)
    }
}

impl Neg for UnitVec3 {
    type Output = UnitVec3;
    fn neg(self) -> UnitVec3 {
        UnitVec3(-self.0)
    }
}

impl From<UnitVec3> for Vec3 {
    fn from(u: UnitVec3) -> Vec3 {
        u.0
    }
}

impl TryFrom<Vec3> for UnitVec3 {
    type Error = String;
    fn try_from(v: Vec3) -> Result<Self, String> {
        UnitVec3::new(v).ok_or_else(|| format!("cannot normalize {v}"))
    }
}

impl fmt::Display for UnitVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A point in a 2D projection plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

/// Orthonormal frame `(e1, e2)` of the plane orthogonal to `v`, with
/// `e1 × e2 = v`.
///
/// `e1` is the normalized projection of the x-axis onto `v⊥`, or of the
/// y-axis when `|v.x| > 0.9`. The choice depends only on `|v.x|`, so
/// `-v` gets the frame `(e1, -e2)`.
pub fn orthonormal_basis(v: UnitVec3) -> (UnitVec3, UnitVec3) {
    let d = v.vec();
    let helper = if d.x.abs() > 0.9 {
        Vec3::new(0.0, 1.0, 0.0)
    } else {
        Vec3::new(1.0, 0.0, 0.0)
    };
    let e1 = UnitVec3::new(helper - d * helper.dot(d)).expect("helper axis is not parallel to v");
    let e2 = UnitVec3::new(d.cross(e1.vec())).expect("v and e1 are orthonormal");
    (e1, e2)
}

/// Coordinates of `p` in the frame `(e1, e2)`.
pub fn project_point(p: Vec3, frame: (UnitVec3, UnitVec3)) -> Point2 {
    Point2::new(frame.0.dot(p), frame.1.dot(p))
}

/// Lifts frame coordinates back into R³ (the point of `v⊥` with those coordinates).
pub fn lift_point(q: Point2, frame: (UnitVec3, UnitVec3)) -> Vec3 {
    frame.0.vec() * q.x + frame.1.vec() * q.y
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_frame_for_z() {
        let (e1, e2) = orthonormal_basis(UnitVec3::Z);
        assert_eq!(e1.vec(), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(e2.vec(), Vec3::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn frame_for_minus_z_is_right_handed() {
        let v = -UnitVec3::Z;
        let (e1, e2) = orthonormal_basis(v);
        let c = e1.vec().cross(e2.vec());
        assert!((c - v.vec()).norm() < 1e-15);
    }

    #[test]
    fn antipode_frame_mirrors_second_axis() {
        let v = UnitVec3::from_xyz(0.3, -0.5, 0.8).unwrap();
        let (a1, a2) = orthonormal_basis(v);
        let (b1, b2) = orthonormal_basis(-v);
        assert_eq!(a1, b1);
        assert!((a2.vec() + b2.vec()).norm() < 1e-15);
    }

    #[test]
    fn canonical_representative() {
        let v = UnitVec3::from_xyz(-1.0, 2.0, 0.0).unwrap();
        let (c, flipped) = v.antipodal_canonical();
        assert!(flipped);
        assert!(c.vec().x > 0.0);
        let (c2, f2) = (-v).antipodal_canonical();
        assert!(!f2);
        assert_eq!(c, c2);
    }

    #[test]
    fn slerp_endpoints_and_midpoint() {
        let a = UnitVec3::X;
        let b = UnitVec3::Y;
        assert!((a.slerp(b, 0.0).vec() - a.vec()).norm() < 1e-15);
        assert!((a.slerp(b, 1.0).vec() - b.vec()).norm() < 1e-15);
        let m = a.slerp(b, 0.5);
        assert!((m.angle_to(a) - std::f64::consts::FRAC_PI_4).abs() < 1e-14);
    }

    fn unit() -> impl Strategy<Value = UnitVec3> {
        (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0).prop_filter_map("nonzero", |(x, y, z)| {
            let v = Vec3::new(x, y, z);
            (v.norm() > 1e-3).then(|| UnitVec3::new(v)).flatten()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn basis_is_orthonormal(v in unit()) {
            let (e1, e2) = orthonormal_basis(v);
            prop_assert!(e1.dot(v.vec()).abs() < 1e-12);
            prop_assert!(e2.dot(v.vec()).abs() < 1e-12);
            prop_assert!(e1.dot(e2.vec()).abs() < 1e-12);
            prop_assert!((e1.vec().norm() - 1.0).abs() < 1e-12);
            prop_assert!((e2.vec().norm() - 1.0).abs() < 1e-12);
            prop_assert!((e1.vec().cross(e2.vec()) - v.vec()).norm() < 1e-12);
        }

        #[test]
        fn unit_norm_invariant(x in -1e3f64..1e3, y in -1e3f64..1e3, z in -1e3f64..1e3) {
            if let Some(u) = UnitVec3::from_xyz(x, y, z) {
                prop_assert!((u.vec().norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}
