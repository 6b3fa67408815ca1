//! Individual lines: Helly witnesses, fibers and geometric permutations.
//! The saddle segments have no open set of transversals, so their fibers
//! are empty; the cube fibers are convex polygons.

use transversal_cone::constructions::{ruled_segments, ruling_direction};
use transversal_cone::convex::{ConvexBody, UnitVec3, Vec3};
use transversal_cone::{DirectedLine, Family};

fn main() {
    let family = Family::new(ruled_segments()).unwrap();
    for b in [1.0, 1.5, 2.0, 3.0] {
        let line = DirectedLine::new(Vec3::new(0.0, b, 0.0), ruling_direction(b));
        let hits = family.is_line_transversal(&line);
        let order = family.geometric_permutation(&line).ok();
        let rev = family.geometric_permutation(&line.reversed()).ok();
        println!("y = {b}: transversal {hits}, order {order:?}, reversed {rev:?}");
    }

    let v = ruling_direction(4.0);
    match family.helly_witness(v) {
        Ok(w) => println!(
            "direction {v} fails already on bodies {:?} (depth {:.3})",
            w.indices, w.depth_at_v
        ),
        Err(e) => println!("direction {v}: {e}"),
    }
    println!(
        "fiber at {}: {:?}",
        ruling_direction(1.5),
        family.fiber_polygon(ruling_direction(1.5))
    );

    let cubes = Family::new(vec![
        ConvexBody::cube("lower", Vec3::new(0.0, 0.0, -3.0), 2.0).unwrap(),
        ConvexBody::cube("upper", Vec3::new(0.0, 0.0, 3.0), 2.0).unwrap(),
    ])
    .unwrap();
    for v in [UnitVec3::Z, UnitVec3::from_xyz(0.2, 0.1, 1.0).unwrap()] {
        let p = cubes.fiber_polygon(v).unwrap();
        println!(
            "cube fiber at {v}: {} vertices, area {:.3}",
            p.len(),
            p.area()
        );
    }
}
