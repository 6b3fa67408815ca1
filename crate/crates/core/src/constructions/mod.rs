//! Scene generators: segments on the saddle `z = xy` whose transversal
//! directions form a prescribed Cantor-like set, its inflation, and random
//! disjoint families.

mod random;

pub use random::{random_disjoint_family, RANDOM_MAX_BODIES};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convex::{ConvexBody, UnitVec3, Vec3};
use crate::sphere::build_mesh;
use crate::tolerance::Tolerances;
use crate::transversal::{Family, FamilyError};

/// Largest Cantor stage accepted; stage `k` has `2^k` intervals.
pub const MAX_STAGE: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("Cantor stage {0} outside 0..={MAX_STAGE}")]
    BadStage(i64),
    #[error("need at least 2 samples per interval, got {0}")]
    TooFewSamples(usize),
    #[error("curve parameter {0} outside [1, 2]")]
    OutOfRange(f64),
    #[error("generated bodies are not disjoint: {0}")]
    DisjointnessFailure(FamilyError),
    #[error("inflation radius {eps} must lie in (0, {limit})")]
    EpsTooLarge { eps: f64, limit: f64 },
    #[error("family size {0} outside 2..={RANDOM_MAX_BODIES}")]
    BadBodyCount(i64),
    #[error("no disjoint placement found after {0} attempts")]
    PlacementFailure(usize),
}

/// Finite stage of the middle-thirds Cantor set, rescaled to `[1, 2]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CantorSpec {
    pub stage: u32,
    pub intervals: Vec<(f64, f64)>,
    pub samples_per_interval: usize,
}

impl CantorSpec {
    pub fn new(stage: i64, samples_per_interval: usize) -> Result<Self, ConstructionError> {
        if !(0..=MAX_STAGE as i64).contains(&stage) {
            return Err(ConstructionError::BadStage(stage));
        }
        if samples_per_interval < 2 {
            return Err(ConstructionError::TooFewSamples(samples_per_interval));
        }
        let mut intervals = vec![(1.0, 2.0)];
        for _ in 0..stage {
            intervals = intervals
                .into_iter()
                .flat_map(|(a, b): (f64, f64)| {
                    let third = (b - a) / 3.0;
                    [(a, a + third), (b - third, b)]
                })
                .collect();
        }
        Ok(CantorSpec {
            stage: stage as u32,
            intervals,
            samples_per_interval,
        })
    }

    /// Curve parameters whose hyperbola points generate the fourth body.
    pub fn samples(&self) -> Vec<f64> {
        let m = self.samples_per_interval;
        self.intervals
            .iter()
            .flat_map(|&(a, b)| (0..m).map(move |i| a + (b - a) * i as f64 / (m - 1) as f64))
            .collect()
    }

    /// Smallest distance between consecutive intervals, `None` at stage 0.
    pub fn min_gap(&self) -> Option<f64> {
        self.intervals
            .windows(2)
            .map(|w| w[1].0 - w[0].1)
            .min_by(f64::total_cmp)
    }

    /// Gap used to split probe hits into clusters: half the smallest gap
    /// between intervals, or half the unit interval at stage 0.
    pub fn cluster_gap(&self) -> f64 {
        0.5 * self.min_gap().unwrap_or(1.0)
    }

    /// Bound on how far the hull chords between consecutive samples stray
    /// from the hyperbola: `max|γ''|·Δc²/8` with `|γ''| ≤ √(1/16 + 1)` on
    /// `[1, 2]`.
    pub fn sagitta_bound(&self) -> f64 {
        let (a, b) = self.intervals[0];
        let dc = (b - a) / (self.samples_per_interval - 1) as f64;
        (1.0f64 / 16.0 + 1.0).sqrt() * dc * dc / 8.0
    }

    /// Curve-probe tolerance: the sagitta bound, or τ if larger. A ruling
    /// direction inside an interval misses the fourth body by at most the
    /// sagitta, so its depth stays above minus this value.
    pub fn curve_tolerance(&self, defaults: &Tolerances) -> f64 {
        defaults.tau.max(self.sagitta_bound())
    }
}

/// The three segments `S_i` from `(i, 1, i)` to `(i, 2, 2i)` on the lines
/// `x = i` of the saddle `z = xy`.
pub fn ruled_segments() -> Vec<ConvexBody> {
    (1..=3)
        .map(|i| {
            let x = i as f64;
            ConvexBody::segment(
                format!("S{i}"),
                Vec3::new(x, 1.0, x),
                Vec3::new(x, 2.0, 2.0 * x),
            )
            .expect("finite endpoints")
        })
        .collect()
}

/// `(1/(c−4), c, c/(c−4))`: on the saddle and on the plane `z = 4x + 1`.
pub fn hyperbola_point(c: f64) -> Result<Vec3, ConstructionError> {
    if !(1.0..=2.0).contains(&c) {
        return Err(ConstructionError::OutOfRange(c));
    }
    Ok(Vec3::new(1.0 / (c - 4.0), c, c / (c - 4.0)))
}

/// The three ruled segments plus the hull of the hyperbola points over the
/// sampled parameters.
pub fn cantor_family(spec: &CantorSpec) -> Result<Family, ConstructionError> {
    let mut bodies = ruled_segments();
    let pts = spec
        .samples()
        .into_iter()
        .map(hyperbola_point)
        .collect::<Result<Vec<_>, _>>()?;
    bodies.push(ConvexBody::new("S4", pts).expect("nonempty sample set"));
    Family::new(bodies).map_err(ConstructionError::DisjointnessFailure)
}

/// The direction `(1, 0, b)/‖(1, 0, b)‖` of the ruling `y = b`.
pub fn ruling_direction(b: f64) -> UnitVec3 {
    UnitVec3::from_xyz(1.0, 0.0, b).expect("nonzero")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub b: f64,
    pub depth: f64,
}

/// Direction depth along the curve of ruling directions.
pub fn probe_direction_curve(family: &Family, b_grid: &[f64]) -> Vec<CurveSample> {
    b_grid
        .iter()
        .map(|&b| CurveSample {
            b,
            depth: family.direction_depth(ruling_direction(b)).depth,
        })
        .collect()
}

/// `lo, lo + step, …` up to `hi` inclusive (up to rounding).
pub fn probe_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|i| lo + step * i as f64).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub lo: f64,
    pub hi: f64,
}

/// Groups the probes with `depth ≥ −tolerance`. A new cluster starts when
/// the next accepted parameter is more than `gap` past the previous one.
pub fn curve_clusters(samples: &[CurveSample], tolerance: f64, gap: f64) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = Vec::new();
    for s in samples.iter().filter(|s| s.depth >= -tolerance) {
        match out.last_mut() {
            Some(c) if s.b - c.hi <= gap => c.hi = s.b,
            _ => out.push(Cluster { lo: s.b, hi: s.b }),
        }
    }
    out
}

/// Replaces every body by its Minkowski sum with a 42-point sample of the
/// ball of radius `eps`.
pub fn inflate(family: &Family, eps: f64) -> Result<Family, ConstructionError> {
    let limit = 0.5 * family.min_separator_margin();
    if !(eps > 0.0 && eps < limit) {
        return Err(ConstructionError::EpsTooLarge { eps, limit });
    }
    let dirs: Vec<Vec3> = build_mesh(1)
        .expect("level 1")
        .vertices
        .iter()
        .map(|u| u.vec())
        .collect();
    let bodies = family
        .bodies()
        .iter()
        .map(|b| b.minkowski_with_points(&dirs, eps))
        .collect();
    Family::new(bodies).map_err(ConstructionError::DisjointnessFailure)
}
