//! Probing the ruling directions of the saddle construction: the
//! transversal parameters cluster into the intervals of a Cantor stage.

use transversal_cone::constructions::{
    cantor_family, curve_clusters, probe_direction_curve, probe_grid, ruling_direction, CantorSpec,
};

fn main() {
    for stage in 0..=3 {
        let spec = CantorSpec::new(stage, 16).unwrap();
        let family = cantor_family(&spec).unwrap();
        let samples = probe_direction_curve(&family, &probe_grid(0.5, 2.5, 0.001));
        let tol = spec.curve_tolerance(family.tolerances());
        let clusters = curve_clusters(&samples, tol, spec.cluster_gap());
        let spans: Vec<String> = clusters
            .iter()
            .map(|c| format!("[{:.3}, {:.3}]", c.lo, c.hi))
            .collect();
        println!(
            "stage {stage}: {} clusters {}",
            clusters.len(),
            spans.join(" ")
        );
        if stage == 3 {
            println!(
                "b = 2.3: depth {:.4}",
                family.direction_depth(ruling_direction(2.3)).depth
            );
        }
    }
}
