//! Paths through non-transversal directions that start on the boundary of
//! the transversal cone and end on a separating great circle.

use transversal_cone::convex::{ConvexBody, UnitVec3, Vec3};
use transversal_cone::path::{build_boundary_path, refine_to_boundary};
use transversal_cone::Family;

fn prism(label: &str, tri: [(f64, f64); 3], z0: f64, z1: f64) -> ConvexBody {
    let vs = tri
        .iter()
        .flat_map(|&(x, y)| [Vec3::new(x, y, z0), Vec3::new(x, y, z1)])
        .collect();
    ConvexBody::new(label, vs).unwrap()
}

fn report(name: &str, family: &Family, start: UnitVec3) {
    let circles = family.separating_circles();
    let path = build_boundary_path(family, start, &circles).unwrap();
    path.verify(family, &circles).unwrap();
    println!(
        "{name}: {:?}, {} samples, stop angle {:.4}, witness {:?}, ends {:.1e} rad from Y",
        path.case_tag,
        path.samples.len(),
        path.stop_angle,
        path.witness.as_ref().map(|w| &w.indices),
        circles.angle_to(path.end())
    );
}

fn main() {
    let balls = Family::new(vec![
        ConvexBody::ball("near", Vec3::new(0.0, 2.0, 0.0), 1.0, 80).unwrap(),
        ConvexBody::ball("far", Vec3::new(0.0, -2.0, 0.0), 1.0, 80).unwrap(),
    ])
    .unwrap();
    let tangent = refine_to_boundary(&balls, UnitVec3::Z, UnitVec3::Y).unwrap();
    println!(
        "tangent direction {tangent}, depth {:.1e}",
        balls.direction_depth(tangent).depth
    );
    report("two balls", &balls, tangent);

    let prisms = Family::new(vec![
        prism("k1", [(-2.0, 2.0), (2.0, -2.0), (2.0, 2.0)], 0.0, 1.0),
        prism("k2", [(-2.0, -2.0), (2.0, 2.0), (-2.0, 2.0)], 2.0, 3.0),
        prism("k3", [(-2.0, 0.0), (2.0, 0.0), (0.0, -2.0)], 4.0, 5.0),
    ])
    .unwrap();
    report("three prisms", &prisms, UnitVec3::Z);
}
