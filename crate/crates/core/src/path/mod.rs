//! Paths of non-transversal directions ending on a separating great circle.

mod boundary;
mod march;

pub use boundary::{build_boundary_path, refine_to_boundary};
pub use march::{connect_to_separators, MARCH_STEP};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convex::UnitVec3;
use crate::transversal::{Family, GreatCircleSet, HellyWitness, QueryError};

/// Largest angle between consecutive samples of an emitted path.
pub const MAX_SAMPLE_GAP: f64 = 0.02;
/// Arc step used when sampling rotations.
pub const ROTATION_STEP: f64 = 0.01;
/// Distance to a circle of Y accepted as lying on it.
pub const ON_CIRCLE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseTag {
    Constant,
    TwoBody,
    ThreeBody,
    GeodesicMarch,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePath {
    pub samples: Vec<UnitVec3>,
    /// Rotation angle for the two- and three-body cases, marched arc length
    /// for a geodesic march, zero for a constant path.
    pub stop_angle: f64,
    pub case_tag: CaseTag,
    pub witness: Option<HellyWitness>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PathError {
    #[error("endpoints do not bracket the boundary (depths {depth_v:e}, {depth_w:e})")]
    NotBracketed { depth_v: f64, depth_w: f64 },
    #[error("bisection stalled at depth {depth:e}")]
    BisectionStalled { depth: f64 },
    #[error("start direction is transversal (depth {depth:e})")]
    StartTransversal { depth: f64 },
    #[error("no Helly witness: {0}")]
    WitnessNotFound(QueryError),
    #[error("sample {index} has depth {depth:e}, above the allowed bound")]
    ValidationFailed { index: usize, depth: f64 },
    #[error("path ends {angle:e} rad away from the separating circles")]
    MissesSeparators { angle: f64 },
    #[error("samples {index} and {next} are {gap:e} rad apart", next = index + 1)]
    SampleGap { index: usize, gap: f64 },
    #[error("no labeling of bodies {indices:?} matches the three-halfplane frame")]
    FrameDegenerate { indices: Vec<usize> },
}

impl SpherePath {
    pub fn constant(v: UnitVec3, witness: Option<HellyWitness>) -> Self {
        SpherePath {
            samples: vec![v],
            stop_angle: 0.0,
            case_tag: CaseTag::Constant,
            witness,
        }
    }

    pub fn start(&self) -> UnitVec3 {
        self.samples[0]
    }

    pub fn end(&self) -> UnitVec3 {
        *self.samples.last().expect("paths have at least one sample")
    }

    /// Sum of the angles between consecutive samples.
    pub fn length(&self) -> f64 {
        self.samples
            .windows(2)
            .fold(0.0, |acc, w| acc + w[0].angle_to(w[1]))
    }

    /// Checks the path contract: sample spacing, every sample at depth at
    /// most τ, and the last sample on a circle of `circles`.
    pub fn verify(&self, family: &Family, circles: &GreatCircleSet) -> Result<(), PathError> {
        for (index, w) in self.samples.windows(2).enumerate() {
            let gap = w[0].angle_to(w[1]);
            if gap >= MAX_SAMPLE_GAP {
                return Err(PathError::SampleGap { index, gap });
            }
        }
        let tau = family.tolerances().tau;
        for (index, &u) in self.samples.iter().enumerate() {
            let depth = family.direction_depth(u).depth;
            if depth > tau {
                return Err(PathError::ValidationFailed { index, depth });
            }
        }
        let angle = circles.angle_to(self.end());
        if angle > ON_CIRCLE_TOL {
            return Err(PathError::MissesSeparators { angle });
        }
        Ok(())
    }
}

/// Samples `cos θ·v + sin θ·dir` for θ from 0 to `angle`, steps at most
/// [`ROTATION_STEP`]. `dir` must be a unit vector orthogonal to `v`.
pub(crate) fn rotation_samples(v: UnitVec3, dir: UnitVec3, angle: f64) -> Vec<UnitVec3> {
    let steps = (angle / ROTATION_STEP).ceil().max(1.0) as usize;
    (0..=steps)
        .map(|i| {
            let t = angle * i as f64 / steps as f64;
            UnitVec3::new(v.vec() * t.cos() + dir.vec() * t.sin())
                .expect("rotation of a unit vector")
        })
        .collect()
}
