//! Signed common depth of planar convex polygons.

use transversal_cone::convex::{common_depth, convex_hull, Point2};

fn square(x: f64, y: f64, side: f64) -> Vec<Point2> {
    vec![
        Point2::new(x, y),
        Point2::new(x + side, y),
        Point2::new(x, y + side),
        Point2::new(x + side, y + side),
    ]
}

fn main() {
    for (name, offset) in [("overlapping", 0.5), ("touching", 1.0), ("apart", 2.0)] {
        let polys = [
            convex_hull(&square(0.0, 0.0, 1.0)),
            convex_hull(&square(offset, 0.0, 1.0)),
        ];
        let r = common_depth(&polys).unwrap();
        println!(
            "{name:12} depth {:+.4} at ({:.3}, {:.3})",
            r.depth, r.witness.x, r.witness.y
        );
    }
}
