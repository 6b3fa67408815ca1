//! Random pairwise disjoint polytope families for stress testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convex::{scene_diameter, strict_separator, ConvexBody, Vec3};
use crate::transversal::Family;

use super::ConstructionError;

pub const RANDOM_MAX_BODIES: usize = 12;
const MAX_REJECTIONS: usize = 10_000;
const MARGIN_FACTOR: f64 = 0.05;

fn unit_ball_point(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let p = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if p.norm_sq() <= 1.0 {
            return p;
        }
    }
}

/// Rotation taking the standard axes to a random orthonormal frame.
fn random_rotation(rng: &mut ChaCha8Rng) -> [Vec3; 3] {
    loop {
        let a = unit_ball_point(rng);
        let b = unit_ball_point(rng);
        let (Some(e1), Some(_)) = (a.normalized(), b.normalized()) else {
            continue;
        };
        let e1 = e1.vec();
        let Some(e2) = (b - e1 * e1.dot(b)).normalized() else {
            continue;
        };
        let e2 = e2.vec();
        return [e1, e2, e1.cross(e2)];
    }
}

/// Polytope of 8 to 20 random points in a randomly oriented ellipsoid
/// around the origin.
fn random_shape(rng: &mut ChaCha8Rng, label: String) -> ConvexBody {
    let count = rng.gen_range(8..=20);
    let radius = rng.gen_range(0.5..1.5);
    let axes = [1.0, rng.gen_range(0.4..1.0), rng.gen_range(0.4..1.0)];
    let [r0, r1, r2] = random_rotation(rng);
    let verts = (0..count)
        .map(|_| {
            let p = unit_ball_point(rng);
            (r0 * (p.x * axes[0]) + r1 * (p.y * axes[1]) + r2 * (p.z * axes[2])) * radius
        })
        .collect();
    ConvexBody::new(label, verts).expect("finite points")
}

fn translated(body: &ConvexBody, by: Vec3) -> ConvexBody {
    let verts = body.vertices().iter().map(|&v| v + by).collect();
    ConvexBody::new(body.label.clone(), verts).expect("finite points")
}

/// Largest family laid out along a line; bigger families are scattered in
/// a box.
pub const CHAIN_MAX_BODIES: usize = 8;
/// Largest distance of a body's anchor from its slot on the chain line.
const CHAIN_JITTER: f64 = 0.6;

/// `n` random polytopes placed by rejection sampling, with every pairwise
/// separator margin above 5% of the scene diameter. Up to
/// [`CHAIN_MAX_BODIES`] bodies sit in evenly spaced slots along a random
/// line, each shifted off the line by a random offset, so transversals are
/// common but not guaranteed. The same seed always yields the same family.
pub fn random_disjoint_family(n: i64, seed: u64) -> Result<Family, ConstructionError> {
    if !(2..=RANDOM_MAX_BODIES as i64).contains(&n) {
        return Err(ConstructionError::BadBodyCount(n));
    }
    let n = n as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (slots, diameter_bound) = if n <= CHAIN_MAX_BODIES {
        chain_slots(&mut rng, n)
    } else {
        box_slots(n)
    };
    let min_margin = MARGIN_FACTOR * diameter_bound;

    let mut bodies: Vec<ConvexBody> = Vec::with_capacity(n);
    let mut rejections = 0;
    while bodies.len() < n {
        let shape = random_shape(&mut rng, format!("P{}", bodies.len()));
        let offset = match &slots {
            Slots::Chain { points } => {
                points[bodies.len()] + unit_ball_point(&mut rng) * CHAIN_JITTER
            }
            Slots::Box { half } => Vec3::new(
                rng.gen_range(-half..*half),
                rng.gen_range(-half..*half),
                rng.gen_range(-half..*half),
            ),
        };
        let candidate = translated(&shape, offset);
        if bodies
            .iter()
            .all(|b| strict_separator(b, &candidate, min_margin).is_ok())
        {
            bodies.push(candidate);
        } else {
            rejections += 1;
            if rejections >= MAX_REJECTIONS {
                return Err(ConstructionError::PlacementFailure(rejections));
            }
        }
    }
    debug_assert!(scene_diameter(&bodies) <= diameter_bound);
    Family::new(bodies).map_err(ConstructionError::DisjointnessFailure)
}

enum Slots {
    Chain { points: Vec<Vec3> },
    Box { half: f64 },
}

/// Largest distance from a shape vertex to its anchor.
const SHAPE_REACH: f64 = 1.5;

fn chain_slots(rng: &mut ChaCha8Rng, n: usize) -> (Slots, f64) {
    let dir = unit_ball_point(rng)
        .normalized()
        .map_or(Vec3::new(1.0, 0.0, 0.0), |u| u.vec());
    let reach = SHAPE_REACH + CHAIN_JITTER;
    let pad = 2.0 * 3f64.sqrt() * reach;
    // worst-case neighbour gap equals 2·MARGIN_FACTOR·D at this spacing
    let spacing =
        (2.0 * reach + 2.0 * MARGIN_FACTOR * pad) / (1.0 - 2.0 * MARGIN_FACTOR * (n - 1) as f64);
    let spacing = 0.6 * spacing;
    let mid = 0.5 * (n - 1) as f64;
    let points = (0..n).map(|i| dir * ((i as f64 - mid) * spacing)).collect();
    (Slots::Chain { points }, (n - 1) as f64 * spacing + pad)
}

fn box_slots(n: usize) -> (Slots, f64) {
    let half = 1.8 * (n as f64).cbrt() + 0.5;
    (
        Slots::Box { half },
        3f64.sqrt() * 2.0 * (half + SHAPE_REACH),
    )
}
