//! Signed depth of the common intersection of planar convex polygons.
//!
//! The depth is the optimum of the linear program
//!
//! ```text
//! maximize t  subject to  normal·q + t ≤ offset  for every halfplane of every polygon
//! ```
//!
//! so a positive value is the clearance of the deepest common point and a
//! negative value certifies that the polygons have no common point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::geom::Point2;
use super::hull2d::{bbox_diameter, clip_to_halfplane, HalfPlane2, Poly2};
use super::lp::{Halfspace, LinearProgram, LpError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DepthError {
    #[error("no polygons given")]
    EmptyInput,
    #[error("polygon {0} has no vertices")]
    EmptyPolygon(usize),
    #[error(transparent)]
    Lp(#[from] LpError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthResult {
    /// Largest common clearance; negative when the polygons are disjoint.
    pub depth: f64,
    /// A point attaining the depth.
    pub witness: Point2,
}

pub const DEFAULT_LP_SEED: u64 = 0x5eed;

pub fn common_depth(polys: &[Poly2]) -> Result<DepthResult, DepthError> {
    common_depth_seeded(polys, DEFAULT_LP_SEED)
}

pub fn common_depth_seeded(polys: &[Poly2], seed: u64) -> Result<DepthResult, DepthError> {
    if polys.is_empty() {
        return Err(DepthError::EmptyInput);
    }
    if let Some(i) = polys.iter().position(Poly2::is_empty) {
        return Err(DepthError::EmptyPolygon(i));
    }
    let pts = polys.iter().flat_map(|p| p.vertices.iter().copied());
    let (mut lo, mut hi) = (
        Point2::new(f64::INFINITY, f64::INFINITY),
        Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for p in pts.clone() {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let diam = bbox_diameter(pts).max(1e-9 * (1.0 + lo.norm().max(hi.norm())));
    let center = (lo + hi) * 0.5;
    let reach = 10.0 * diam;

    let constraints = polys
        .iter()
        .flat_map(Poly2::halfplanes)
        .map(|h| Halfspace::new([h.normal.x, h.normal.y, 1.0], h.offset))
        .collect();
    let lp = LinearProgram {
        objective: vec![0.0, 0.0, 1.0],
        constraints,
        lower: vec![center.x - reach, center.y - reach, -2.0 * reach],
        upper: vec![center.x + reach, center.y + reach, reach],
    };
    let sol = lp.solve(seed)?;
    let depth = sol.x[2];
    let lp_witness = Point2::new(sol.x[0], sol.x[1]);
    let witness = optimal_set_centroid(polys, depth, diam).unwrap_or(lp_witness);
    Ok(DepthResult { depth, witness })
}

/// Centroid of `{q : clearance(q) ≥ depth − δ}`, a thin neighbourhood of
/// the optimal set. Makes the witness independent of the LP's vertex
/// choice when the optimum is not unique.
fn optimal_set_centroid(polys: &[Poly2], depth: f64, diam: f64) -> Option<Point2> {
    let delta = 1e-10 * diam.min(1.0);
    let halfplanes: Vec<HalfPlane2> = polys
        .iter()
        .flat_map(Poly2::halfplanes)
        .map(|h| HalfPlane2 {
            normal: h.normal,
            offset: h.offset - depth + delta,
        })
        .collect();
    let start = halfplanes.first()?;
    // a large square around the first constraint line's foot point
    let foot = start.normal * start.offset;
    let r = 4.0 * (diam + foot.norm());
    let mut region = vec![
        foot + Point2::new(-r, -r),
        foot + Point2::new(r, -r),
        foot + Point2::new(r, r),
        foot + Point2::new(-r, r),
    ];
    for h in &halfplanes {
        region = clip_to_halfplane(&region, h);
        if region.is_empty() {
            return None;
        }
    }
    // center of the bounding box aligned with the region's longest chord
    let mut axis = Point2::new(1.0, 0.0);
    let mut longest = 0.0;
    for (i, &p) in region.iter().enumerate() {
        for &q in &region[i + 1..] {
            let d = (q - p).norm();
            if d > longest {
                longest = d;
                axis = (q - p) * (1.0 / d);
            }
        }
    }
    let across = axis.perp();
    let span = |dir: Point2| {
        region
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                let s = p.dot(dir);
                (lo.min(s), hi.max(s))
            })
    };
    let (a0, a1) = span(axis);
    let (b0, b1) = span(across);
    let centroid = axis * (0.5 * (a0 + a1)) + across * (0.5 * (b0 + b1));
    // guard against round-off pushing the centroid out of the sliver
    let worst = polys
        .iter()
        .map(|p| p.clearance(centroid))
        .fold(f64::INFINITY, f64::min);
    (worst >= depth - 2.0 * delta - 1e-12).then_some(centroid)
}
