//! Families of pairwise disjoint bodies and their separating great circles.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convex::{
    scene_diameter, strict_separator, ConvexBody, Plane3, SeparatorError, UnitVec3,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("a family needs at least two bodies, got {0}")]
    TooFewBodies(usize),
    #[error("bodies {i} and {j} are not disjoint: {source}")]
    NotDisjoint {
        i: usize,
        j: usize,
        #[source]
        source: SeparatorError,
    },
}

/// An ordered family of at least two pairwise disjoint convex bodies, with
/// max-margin separators computed once at construction.
#[derive(Clone, Debug)]
pub struct Family {
    bodies: Vec<ConvexBody>,
    /// Upper-triangular pair table: entry for (i, j), i < j, has body i on
    /// the negative side.
    separators: Vec<Plane3>,
    tolerances: Tolerances,
    diameter: f64,
}

impl Family {
    /// Builds a family with tolerances scaled to the scene diameter.
    pub fn new(bodies: Vec<ConvexBody>) -> Result<Self, FamilyError> {
        let d = scene_diameter(&bodies);
        Self::with_tolerances(bodies, Tolerances::for_diameter(d))
    }

    pub fn with_tolerances(
        bodies: Vec<ConvexBody>,
        tolerances: Tolerances,
    ) -> Result<Self, FamilyError> {
        let n = bodies.len();
        if n < 2 {
            return Err(FamilyError::TooFewBodies(n));
        }
        let mut separators = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let plane = strict_separator(&bodies[i], &bodies[j], tolerances.tau_sep)
                    .map_err(|source| FamilyError::NotDisjoint { i, j, source })?;
                separators.push(plane);
            }
        }
        let diameter = scene_diameter(&bodies);
        Ok(Family {
            bodies,
            separators,
            tolerances,
            diameter,
        })
    }

    pub fn bodies(&self) -> &[ConvexBody] {
        &self.bodies
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Same bodies, different tolerances (separators are recomputed).
    pub fn retolerance(&self, tolerances: Tolerances) -> Result<Family, FamilyError> {
        Family::with_tolerances(self.bodies.clone(), tolerances)
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        let n = self.bodies.len();
        debug_assert!(i < j && j < n);
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    /// Separator with body `i` on the negative side and `j` on the positive
    /// side, for any ordered pair of distinct indices.
    pub fn separator(&self, i: usize, j: usize) -> Plane3 {
        assert!(i != j, "separator of a body with itself");
        if i < j {
            self.separators[self.pair_index(i, j)]
        } else {
            self.separators[self.pair_index(j, i)].flipped()
        }
    }

    pub fn min_separator_margin(&self) -> f64 {
        self.separators
            .iter()
            .map(|p| p.margin)
            .fold(f64::INFINITY, f64::min)
    }

    /// One great circle per unordered pair, normal = cached separator normal.
    pub fn separating_circles(&self) -> GreatCircleSet {
        let n = self.bodies.len();
        let mut circles = Vec::with_capacity(self.separators.len());
        for i in 0..n {
            for j in i + 1..n {
                circles.push(SeparatingCircle {
                    normal: self.separator(i, j).normal,
                    pair: (i, j),
                });
            }
        }
        GreatCircleSet { circles }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatingCircle {
    pub normal: UnitVec3,
    pub pair: (usize, usize),
}

impl SeparatingCircle {
    /// Angular distance from `v` to the circle.
    pub fn angle_to(&self, v: UnitVec3) -> f64 {
        self.normal.dot(v.vec()).clamp(-1.0, 1.0).asin().abs()
    }

    /// Nearest point of the circle to `v`, if `v` is not a pole.
    pub fn nearest_point(&self, v: UnitVec3) -> Option<UnitVec3> {
        let n = self.normal.vec();
        UnitVec3::new(v.vec() - n * n.dot(v.vec()))
    }

    /// Evenly spaced points on the circle.
    pub fn sample(&self, count: usize) -> Vec<UnitVec3> {
        let (e1, e2) = crate::convex::orthonormal_basis(self.normal);
        (0..count)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / count as f64;
                UnitVec3::new(e1.vec() * a.cos() + e2.vec() * a.sin()).expect("orthonormal frame")
            })
            .collect()
    }
}

/// The set Y of separating directions.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GreatCircleSet {
    pub circles: Vec<SeparatingCircle>,
}

impl GreatCircleSet {
    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    /// Smallest angular distance from `v` to any circle.
    pub fn angle_to(&self, v: UnitVec3) -> f64 {
        self.circles
            .iter()
            .map(|c| c.angle_to(v))
            .fold(f64::INFINITY, f64::min)
    }

    /// Circle closest to `v`; ties go to the first listed.
    pub fn nearest(&self, v: UnitVec3) -> Option<&SeparatingCircle> {
        self.circles
            .iter()
            .min_by(|a, b| a.angle_to(v).total_cmp(&b.angle_to(v)))
    }

    pub fn contains(&self, v: UnitVec3, tol: f64) -> bool {
        self.circles
            .iter()
            .any(|c| c.normal.dot(v.vec()).abs() <= tol)
    }
}
