//! Geodesic march from a non-transversal direction to the separating circles.

use crate::convex::{orthonormal_basis, UnitVec3};
use crate::transversal::{Family, GreatCircleSet};

use super::{
    build_boundary_path, refine_to_boundary, CaseTag, PathError, SpherePath, ON_CIRCLE_TOL,
};

/// Arc length of one march step.
pub const MARCH_STEP: f64 = 0.005;

/// Walks from `x` along the geodesic to the nearest separating circle. If
/// the walk would enter the transversal set, it stops at the boundary and
/// continues with [`build_boundary_path`].
pub fn connect_to_separators(
    family: &Family,
    x: UnitVec3,
    circles: &GreatCircleSet,
) -> Result<SpherePath, PathError> {
    let tau = family.tolerances().tau;
    let depth = family.direction_depth(x).depth;
    if depth > tau {
        return Err(PathError::StartTransversal { depth });
    }
    if depth >= -tau {
        return build_boundary_path(family, x, circles);
    }
    if circles.angle_to(x) <= ON_CIRCLE_TOL {
        return Ok(SpherePath::constant(x, None));
    }
    let circle = circles
        .nearest(x)
        .expect("families have at least one circle");
    let target = circle
        .nearest_point(x)
        .unwrap_or_else(|| orthonormal_basis(circle.normal).0);
    let total = x.angle_to(target);
    let steps = (total / MARCH_STEP).ceil().max(1.0) as usize;

    let mut samples = vec![x];
    for k in 1..=steps {
        let next = if k == steps {
            target
        } else {
            x.slerp(target, k as f64 / steps as f64)
        };
        let depth = family.direction_depth(next).depth;
        if depth < -tau {
            samples.push(next);
            continue;
        }
        let prev = *samples.last().expect("nonempty");
        let boundary = if depth <= tau {
            next
        } else {
            refine_to_boundary(family, prev, next)?
        };
        let tail = build_boundary_path(family, boundary, circles)?;
        samples.extend(tail.samples);
        return Ok(SpherePath {
            samples,
            stop_angle: x.angle_to(boundary),
            case_tag: CaseTag::GeodesicMarch,
            witness: tail.witness,
        });
    }
    Ok(SpherePath {
        samples,
        stop_angle: total,
        case_tag: CaseTag::GeodesicMarch,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::{ConvexBody, Vec3};

    #[test]
    fn start_on_circle_is_constant() {
        let f = Family::new(vec![
            ConvexBody::cube("lo", Vec3::new(0.0, 0.0, -3.0), 2.0).unwrap(),
            ConvexBody::cube("hi", Vec3::new(0.0, 0.0, 3.0), 2.0).unwrap(),
        ])
        .unwrap();
        let p = connect_to_separators(&f, UnitVec3::X, &f.separating_circles()).unwrap();
        assert_eq!(p.case_tag, CaseTag::Constant);
    }

    #[test]
    fn ball_march_validates() {
        let f = Family::new(vec![
            ConvexBody::ball("a", Vec3::new(0.0, 2.0, 0.0), 1.0, 80).unwrap(),
            ConvexBody::ball("b", Vec3::new(0.0, -2.0, 0.0), 1.0, 80).unwrap(),
        ])
        .unwrap();
        let circles = f.separating_circles();
        let x = UnitVec3::from_xyz(0.0, 0.1736, 0.9848).unwrap();
        let p = connect_to_separators(&f, x, &circles).unwrap();
        assert_eq!(p.case_tag, CaseTag::GeodesicMarch);
        assert_eq!(p.start(), x);
        p.verify(&f, &circles).unwrap();
    }

    #[test]
    fn march_through_boundary_concatenates() {
        let f = Family::new(vec![
            ConvexBody::ball("a", Vec3::new(0.0, 2.0, 0.0), 1.0, 80).unwrap(),
            ConvexBody::ball("b", Vec3::new(0.0, -2.0, 0.0), 1.0, 80).unwrap(),
        ])
        .unwrap();
        let circles = f.separating_circles();
        for k in 0..20 {
            let a = 0.05 + 0.07 * k as f64;
            let x = UnitVec3::from_xyz(a.sin() * 0.3, a.sin(), a.cos()).unwrap();
            if f.direction_depth(x).depth < -f.tolerances().tau {
                let p = connect_to_separators(&f, x, &circles).unwrap();
                p.verify(&f, &circles).unwrap();
            }
        }
    }
}
