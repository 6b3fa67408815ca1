//! Contractibility verdicts on seeded random families.

use std::time::Instant;

use transversal_cone::constructions::random_disjoint_family;
use transversal_cone::sphere::{contractibility_report, ReportConfig};

fn main() {
    let level = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let start = Instant::now();
    for seed in 0..20 {
        let n = 2 + (seed % 5) as i64;
        let family = random_disjoint_family(n, seed).unwrap();
        let r = contractibility_report(
            &family,
            ReportConfig {
                level,
                ..Default::default()
            },
        )
        .unwrap();
        println!(
            "seed {seed:2} n {n}: {:?} components {} χ {:?} ambiguous {:.4}",
            r.verdict,
            r.directed_count(),
            r.transversal.euler_characteristics(),
            r.ambiguous_fraction
        );
    }
    println!("{:.1} s at level {level}", start.elapsed().as_secs_f64());
}
