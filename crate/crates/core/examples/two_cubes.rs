//! Transversal directions of two stacked cubes: two antipodal caps, each a
//! disk, with an annulus of non-transversal directions between them.

use transversal_cone::convex::{ConvexBody, UnitVec3, Vec3};
use transversal_cone::sphere::{contractibility_report, ReportConfig};
use transversal_cone::Family;

fn main() {
    let family = Family::new(vec![
        ConvexBody::cube("lower", Vec3::new(0.0, 0.0, -3.0), 2.0).unwrap(),
        ConvexBody::cube("upper", Vec3::new(0.0, 0.0, 3.0), 2.0).unwrap(),
    ])
    .unwrap();

    for v in [
        UnitVec3::Z,
        UnitVec3::X,
        UnitVec3::from_xyz(0.3, 0.0, 1.0).unwrap(),
    ] {
        let d = family.direction_depth(v);
        println!(
            "{v}: depth {:+.4} -> {:?}",
            d.depth,
            family.classify_direction(v)
        );
    }

    let report = contractibility_report(&family, ReportConfig::default()).unwrap();
    println!(
        "level 4: {:?}, {} directed / {} undirected components, χ {:?}, complement χ {:?}",
        report.verdict,
        report.directed_count(),
        report.undirected_count(),
        report.transversal.euler_characteristics(),
        report.complement.euler_characteristics(),
    );
}
