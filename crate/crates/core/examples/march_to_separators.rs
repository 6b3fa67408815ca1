//! Connecting arbitrary non-transversal directions to the separating
//! circles.

use transversal_cone::constructions::random_disjoint_family;
use transversal_cone::convex::UnitVec3;
use transversal_cone::path::connect_to_separators;

fn main() {
    let family = random_disjoint_family(4, 2).unwrap();
    let circles = family.separating_circles();
    let tau = family.tolerances().tau;
    let mut shown = 0;
    for k in 0..200 {
        let a = k as f64 * 2.399963;
        let z = 1.0 - (k as f64 + 0.5) / 100.0;
        let r = (1.0 - z * z).sqrt();
        let x = UnitVec3::from_xyz(r * a.cos(), r * a.sin(), z).unwrap();
        if family.direction_depth(x).depth >= -tau {
            continue;
        }
        let path = connect_to_separators(&family, x, &circles).unwrap();
        path.verify(&family, &circles).unwrap();
        if shown < 8 {
            println!(
                "{x}: {:?}, length {:.3}, {} samples",
                path.case_tag,
                path.length(),
                path.samples.len()
            );
            shown += 1;
        }
    }
}
