//! Generating scenes, writing them as JSON and analysing them again.

use transversal_cone::cli::{analyze, to_json, Mode, SceneFile};
use transversal_cone::constructions::{random_disjoint_family, CantorSpec};

fn main() {
    let random = SceneFile::from_family(&random_disjoint_family(3, 1).unwrap());
    let text = random.to_json();
    assert_eq!(SceneFile::from_json(&text).unwrap(), random);
    println!(
        "random scene: {} bytes, {} bodies",
        text.len(),
        random.bodies.len()
    );

    let cantor = SceneFile::cantor(&CantorSpec::new(1, 4).unwrap()).unwrap();
    println!("cantor scene block: {:?}", cantor.cantor);

    let (report, _) = analyze(&random, 3, None, Mode::Undirected, false).unwrap();
    print!("{}", to_json(&report));
}
