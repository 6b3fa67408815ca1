//! Maximum-margin separating planes between two convex bodies.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::body::ConvexBody;
use super::distance::hull_difference_min_norm;
use super::geom::{UnitVec3, Vec3};

/// The plane `{p : normal·p = offset}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Plane3 {
    pub normal: UnitVec3,
    pub offset: f64,
    /// Smaller of the two body-to-plane clearances.
    pub margin: f64,
}

impl Plane3 {
    pub fn signed_distance(&self, p: Vec3) -> f64 {
        self.normal.dot(p) - self.offset
    }

    /// Same plane with the orientation reversed.
    pub fn flipped(&self) -> Plane3 {
        Plane3 {
            normal: -self.normal,
            offset: -self.offset,
            margin: self.margin,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeparatorError {
    #[error(
        "bodies `{a}` and `{b}` are not strictly separated (margin {margin:e} ≤ {tolerance:e})"
    )]
    NotDisjoint {
        a: String,
        b: String,
        margin: f64,
        tolerance: f64,
    },
}

/// Max-margin plane with `a` on the negative side and `b` on the positive
/// side. The normal is the direction of the shortest vector from `a` to `b`,
/// which is unique, and the plane bisects that vector.
pub fn strict_separator(
    a: &ConvexBody,
    b: &ConvexBody,
    tau_sep: f64,
) -> Result<Plane3, SeparatorError> {
    let not_disjoint = |margin: f64| SeparatorError::NotDisjoint {
        a: a.label.clone(),
        b: b.label.clone(),
        margin,
        tolerance: tau_sep,
    };
    let z = hull_difference_min_norm(a.vertices(), b.vertices());
    let Some(normal) = z.normalized() else {
        return Err(not_disjoint(0.0));
    };
    let hi_a = a.support(normal.vec());
    let lo_b = -b.support(-normal.vec());
    let margin = 0.5 * (lo_b - hi_a);
    if margin.is_nan() || margin <= tau_sep {
        return Err(not_disjoint(margin));
    }
    Ok(Plane3 {
        normal,
        offset: 0.5 * (lo_b + hi_a),
        margin,
    })
}
