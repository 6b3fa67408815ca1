//! Writes an SVG of the two-ball scene with a boundary path overlaid.

use std::sync::Arc;

use transversal_cone::cli::render_sphere_svg;
use transversal_cone::convex::{ConvexBody, UnitVec3, Vec3};
use transversal_cone::path::connect_to_separators;
use transversal_cone::sphere::{build_mesh, classify};
use transversal_cone::Family;

fn main() {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "two_balls.svg".into());
    let family = Family::new(vec![
        ConvexBody::ball("near", Vec3::new(0.0, 2.0, 0.0), 1.0, 80).unwrap(),
        ConvexBody::ball("far", Vec3::new(0.0, -2.0, 0.0), 1.0, 80).unwrap(),
    ])
    .unwrap();
    let circles = family.separating_circles();
    let mesh = Arc::new(build_mesh(4).unwrap());
    let classification = classify(&family, &mesh);
    let path = connect_to_separators(
        &family,
        UnitVec3::from_xyz(0.4, 0.2, 1.0).unwrap(),
        &circles,
    )
    .unwrap();
    let svg = render_sphere_svg(Some(&classification), &circles, &[path]);
    std::fs::write(&out, svg).unwrap();
    println!("wrote {out}");
}
