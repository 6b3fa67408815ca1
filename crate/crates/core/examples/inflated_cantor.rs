//! Thickening the saddle construction turns its measure-zero transversal
//! set into two antipodal disks.

use transversal_cone::constructions::{cantor_family, inflate, CantorSpec};
use transversal_cone::sphere::{contractibility_report, ReportConfig};

fn main() {
    let base = cantor_family(&CantorSpec::new(2, 8).unwrap()).unwrap();
    println!("min separator margin {:.4}", base.min_separator_margin());
    let family = inflate(&base, 0.05).unwrap();
    for level in [4, 5] {
        let r = contractibility_report(
            &family,
            ReportConfig {
                level,
                ..Default::default()
            },
        )
        .unwrap();
        println!(
            "level {level}: {:?}, {} directed components, χ {:?}, ambiguous {:.4}",
            r.verdict,
            r.directed_count(),
            r.transversal.euler_characteristics(),
            r.ambiguous_fraction
        );
    }
}
