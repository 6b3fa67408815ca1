//! Paths from a boundary point of the non-transversal set to a separating
//! circle, rotating the direction away from a two- or three-body obstruction.

use crate::convex::geom::lift_point;
use crate::convex::hull2d::HalfPlane2;
use crate::convex::{common_depth, orthonormal_basis, project, Point2, Poly2, UnitVec3, Vec3};
use crate::transversal::{Family, GreatCircleSet};

use super::{rotation_samples, CaseTag, PathError, SpherePath, ON_CIRCLE_TOL};

const BISECTION_LIMIT: usize = 60;

/// Bisects the minor arc from non-transversal `v` to transversal `w` for a
/// direction with `|depth| ≤ τ`.
pub fn refine_to_boundary(
    family: &Family,
    v: UnitVec3,
    w: UnitVec3,
) -> Result<UnitVec3, PathError> {
    let tau = family.tolerances().tau;
    let depth_v = family.direction_depth(v).depth;
    let depth_w = family.direction_depth(w).depth;
    if !(depth_v < -tau && depth_w > tau) {
        return Err(PathError::NotBracketed { depth_v, depth_w });
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut depth = depth_v;
    for _ in 0..BISECTION_LIMIT {
        let s = 0.5 * (lo + hi);
        let u = v.slerp(w, s);
        depth = family.direction_depth(u).depth;
        if depth.abs() <= tau {
            return Ok(u);
        }
        if depth < 0.0 {
            lo = s;
        } else {
            hi = s;
        }
    }
    Err(PathError::BisectionStalled { depth })
}

/// Where to rotate `v` and how far.
enum Plan {
    Constant,
    Rotate {
        dir: UnitVec3,
        angle: f64,
        tag: CaseTag,
    },
}

/// Builds a non-transversal path from `v` (depth at most τ) to a circle of
/// `circles`, following the obstruction found by the Helly witness.
pub fn build_boundary_path(
    family: &Family,
    v: UnitVec3,
    circles: &GreatCircleSet,
) -> Result<SpherePath, PathError> {
    let tau = family.tolerances().tau;
    let depth = family.direction_depth(v).depth;
    if depth > tau {
        return Err(PathError::StartTransversal { depth });
    }
    let witness = family
        .helly_witness(v)
        .map_err(PathError::WitnessNotFound)?;
    let plan = match witness.indices[..] {
        [i, j] => two_body_plan(family, v, i, j),
        _ => three_body_plan(family, v, &witness.indices)?,
    };
    let (dir, angle, tag) = match plan {
        Plan::Constant => return Ok(SpherePath::constant(v, Some(witness))),
        Plan::Rotate { dir, angle, tag } => (dir, angle, tag),
    };

    let mut samples = rotation_samples(v, dir, angle);
    samples[0] = v;
    let last = samples.len() - 1;
    for (index, &u) in samples.iter().enumerate() {
        let depth = family.direction_depth(u).depth;
        let bound = if index == 0 || index == last {
            tau
        } else {
            -tau
        };
        let ok = if index == 0 || index == last {
            depth <= bound
        } else {
            depth < bound
        };
        if !ok {
            return Err(PathError::ValidationFailed { index, depth });
        }
    }
    let miss = circles.angle_to(samples[last]);
    if miss > ON_CIRCLE_TOL {
        return Err(PathError::MissesSeparators { angle: miss });
    }
    Ok(SpherePath {
        samples,
        stop_angle: angle,
        case_tag: tag,
        witness: Some(witness),
    })
}

fn on_circle_threshold(family: &Family) -> f64 {
    family.tolerances().tau_sep.min(ON_CIRCLE_TOL)
}

fn lift_dir(d: Point2, frame: (UnitVec3, UnitVec3)) -> UnitVec3 {
    UnitVec3::new(lift_point(d, frame)).expect("unit planar direction")
}

/// Root in (0, π) of `(cos θ·v + sin θ·dir)·n` when `v·n > 0`.
fn crossing_angle(vn: f64, dir: UnitVec3, n: Vec3) -> f64 {
    vn.atan2(-dir.dot(n))
}

fn two_body_plan(family: &Family, v: UnitVec3, i: usize, j: usize) -> Plan {
    let (mut k1, mut k2) = (i, j);
    let mut plane = family.separator(k1, k2);
    let mut vn = v.dot(plane.normal.vec());
    if vn.abs() <= on_circle_threshold(family) {
        return Plan::Constant;
    }
    if vn < 0.0 {
        std::mem::swap(&mut k1, &mut k2);
        plane = plane.flipped();
        vn = -vn;
    }
    let frame = orthonormal_basis(v);
    let bodies = family.bodies();
    let m = best_separating_direction(&project(&bodies[k1], v), &project(&bodies[k2], v));
    let dir = lift_dir(m, frame);
    Plan::Rotate {
        dir,
        angle: crossing_angle(vn, dir, plane.normal.vec()),
        tag: CaseTag::TwoBody,
    }
}

/// Min over `a` minus max over `b` of the projection onto `m`.
fn gap(a: &Poly2, b: &Poly2, m: Point2) -> f64 {
    let lo = a
        .vertices
        .iter()
        .map(|p| m.dot(*p))
        .fold(f64::INFINITY, f64::min);
    let hi = b
        .vertices
        .iter()
        .map(|p| m.dot(*p))
        .fold(f64::NEG_INFINITY, f64::max);
    lo - hi
}

/// Unit direction maximizing the gap with `a` on the positive side. The
/// optimum is an edge normal or a vertex-to-vertex direction.
fn best_separating_direction(a: &Poly2, b: &Poly2) -> Point2 {
    let mut candidates: Vec<Point2> = Vec::new();
    for h in a.halfplanes().into_iter().chain(b.halfplanes()) {
        candidates.push(h.normal);
        candidates.push(h.normal * -1.0);
    }
    for p in &a.vertices {
        for q in &b.vertices {
            let d = *p - *q;
            let len = d.norm();
            if len > 0.0 {
                candidates.push(d * (1.0 / len));
            }
        }
    }
    candidates
        .into_iter()
        .map(|m| (gap(a, b, m), m))
        .max_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(_, m)| m)
        .expect("nonempty candidate list")
}

/// Labeled three-halfplane frame: outward normals `normals[k]` of
/// halfplanes through a common point, one per body.
struct Frame {
    normals: [Point2; 3],
    /// Position of the body playing K3.
    k3: usize,
    score: f64,
}

fn positively_spanning(a: &[Point2; 3]) -> bool {
    const EPS: f64 = 1e-9;
    let c = [a[0].cross(a[1]), a[1].cross(a[2]), a[2].cross(a[0])];
    c.iter().all(|&x| x > EPS) || c.iter().all(|&x| x < -EPS)
}

fn best_frame(active: &[Vec<HalfPlane2>; 3]) -> Option<Frame> {
    let mut best: Option<Frame> = None;
    for h0 in &active[0] {
        for h1 in &active[1] {
            for h2 in &active[2] {
                let normals = [h0.normal, h1.normal, h2.normal];
                if !positively_spanning(&normals) {
                    continue;
                }
                for k3 in 0..3 {
                    let a3 = normals[k3];
                    let others = [(k3 + 1) % 3, (k3 + 2) % 3];
                    if others.iter().any(|&o| normals[o].dot(a3) >= 0.0) {
                        continue;
                    }
                    let e = a3.perp();
                    let score = others
                        .iter()
                        .map(|&o| normals[o].dot(e).abs())
                        .fold(f64::INFINITY, f64::min);
                    if best.as_ref().is_none_or(|b| score > b.score) {
                        best = Some(Frame { normals, k3, score });
                    }
                }
            }
        }
    }
    best
}

fn three_body_plan(family: &Family, v: UnitVec3, indices: &[usize]) -> Result<Plan, PathError> {
    let degenerate = || PathError::FrameDegenerate {
        indices: indices.to_vec(),
    };
    let frame = orthonormal_basis(v);
    let bodies = family.bodies();
    let polys: Vec<Poly2> = indices.iter().map(|&i| project(&bodies[i], v)).collect();
    let r = common_depth(&polys).map_err(|_| degenerate())?;
    let act_tol = 1e-6 * family.diameter();
    let active: Vec<Vec<HalfPlane2>> = polys
        .iter()
        .map(|p| {
            p.halfplanes()
                .into_iter()
                .filter(|h| h.clearance(r.witness) <= r.depth + act_tol)
                .collect()
        })
        .collect();
    let active: [Vec<HalfPlane2>; 3] = active.try_into().map_err(|_| degenerate())?;
    let f = best_frame(&active).ok_or_else(degenerate)?;
    if f.score < 1e-9 {
        return Err(degenerate());
    }

    let (mut o1, mut o2) = ((f.k3 + 1) % 3, (f.k3 + 2) % 3);
    let mut plane = family.separator(indices[o1], indices[o2]);
    let mut vn = v.dot(plane.normal.vec());
    if vn.abs() <= on_circle_threshold(family) {
        return Ok(Plan::Constant);
    }
    if vn < 0.0 {
        std::mem::swap(&mut o1, &mut o2);
        plane = plane.flipped();
        vn = -vn;
    }
    let mut e = f.normals[f.k3].perp();
    if f.normals[o1].dot(e) > 0.0 {
        e = e * -1.0;
    }
    let dir = lift_dir(e, frame);
    Ok(Plan::Rotate {
        dir,
        angle: crossing_angle(vn, dir, plane.normal.vec()),
        tag: CaseTag::ThreeBody,
    })
}
