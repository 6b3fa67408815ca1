//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use transversal_cone::constructions::{
    cantor_family, curve_clusters, inflate, probe_direction_curve, probe_grid,
    random_disjoint_family, ruling_direction, CantorSpec,
};
use transversal_cone::convex::{
    common_depth, convex_hull, ConvexBody, Point2, Poly2, UnitVec3, Vec3,
};
use transversal_cone::path::{
    build_boundary_path, connect_to_separators, refine_to_boundary, PathError,
};
use transversal_cone::sphere::{
    build_mesh, classify, components, contractibility_report, ContractibilityReport, ReportConfig,
    SphereClassification, Verdict,
};
use transversal_cone::{DirectedLine, DirectionClass, Family};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn random_unit(rng: &mut ChaCha8Rng) -> UnitVec3 {
    loop {
        let p = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if p.norm_sq() <= 1.0 {
            if let Some(u) = p.normalized() {
                return u;
            }
        }
    }
}

fn two_cubes() -> Family {
    Family::new(vec![
        ConvexBody::cube("lower", Vec3::new(0.0, 0.0, -3.0), 2.0).unwrap(),
        ConvexBody::cube("upper", Vec3::new(0.0, 0.0, 3.0), 2.0).unwrap(),
    ])
    .unwrap()
}

fn two_balls() -> Family {
    Family::new(vec![
        ConvexBody::ball("near", Vec3::new(0.0, 2.0, 0.0), 1.0, 80).unwrap(),
        ConvexBody::ball("far", Vec3::new(0.0, -2.0, 0.0), 1.0, 80).unwrap(),
    ])
    .unwrap()
}

fn three_prisms() -> Family {
    let prism = |label: &str, tri: [(f64, f64); 3], z0: f64, z1: f64| {
        let vs = tri
            .iter()
            .flat_map(|&(x, y)| [Vec3::new(x, y, z0), Vec3::new(x, y, z1)])
            .collect();
        ConvexBody::new(label, vs).unwrap()
    };
    Family::new(vec![
        prism("k1", [(-2.0, 2.0), (2.0, -2.0), (2.0, 2.0)], 0.0, 1.0),
        prism("k2", [(-2.0, -2.0), (2.0, 2.0), (-2.0, 2.0)], 2.0, 3.0),
        prism("k3", [(-2.0, 0.0), (2.0, 0.0), (0.0, -2.0)], 4.0, 5.0),
    ])
    .unwrap()
}

fn stress_family(seed: u64) -> Family {
    random_disjoint_family(2 + (seed % 5) as i64, seed).unwrap()
}

/// Centroids of the transversal faces of a level-3 classification.
fn transversal_centroids(f: &Family) -> Vec<UnitVec3> {
    let mesh = Arc::new(build_mesh(3).unwrap());
    let c = classify(f, &mesh);
    (0..mesh.face_count())
        .filter(|&k| c.labels[k] == DirectionClass::Transversal)
        .map(|k| mesh.face_centroid(k))
        .collect()
}

/// Two cubes, two balls, three prisms, then random families with a
/// nonempty transversal set until there are ten.
fn path_scenes() -> Vec<(String, Family, Vec<UnitVec3>)> {
    let mut out = Vec::new();
    for (name, f) in [
        ("two cubes", two_cubes()),
        ("two balls", two_balls()),
        ("three prisms", three_prisms()),
    ] {
        let t = transversal_centroids(&f);
        out.push((name.to_string(), f, t));
    }
    let mut seed = 100;
    while out.len() < 10 {
        let f = stress_family(seed);
        let t = transversal_centroids(&f);
        if !t.is_empty() {
            out.push((format!("random seed {seed}"), f, t));
        }
        seed += 1;
    }
    out
}

fn random_non_transversal(f: &Family, rng: &mut ChaCha8Rng) -> UnitVec3 {
    let tau = f.tolerances().tau;
    loop {
        let v = random_unit(rng);
        if f.direction_depth(v).depth < -tau {
            return v;
        }
    }
}

fn criterion_1(reports: &[(u64, ContractibilityReport)], elapsed: f64) -> Outcome {
    let mut bad = Vec::new();
    for (seed, r) in reports {
        let disks = r
            .transversal
            .components
            .iter()
            .all(|c| c.euler_characteristic == 1 && c.is_disk);
        if !(r.verdict == Verdict::Pass
            && disks
            && r.connectivity.is_connected()
            && r.ambiguous_fraction < 0.02)
        {
            bad.push(*seed);
        }
    }
    let comps: usize = reports.iter().map(|(_, r)| r.directed_count()).sum();
    outcome(
        bad.is_empty() && elapsed < 60.0,
        format!(
            "{} families, {comps} transversal components, failing seeds {bad:?}, {elapsed:.1} s",
            reports.len()
        ),
    )
}

fn criterion_2() -> Outcome {
    let f = two_cubes();
    let mut details = Vec::new();
    let mut pass = true;
    for level in [4, 5] {
        let r = contractibility_report(
            &f,
            ReportConfig {
                level,
                ..Default::default()
            },
        )
        .unwrap();
        let n = components(&r.classification, DirectionClass::NonTransversal);
        let ok = r.directed_count() == 2
            && r.transversal.euler_characteristics() == vec![1, 1]
            && n.len() == 1
            && n.euler_characteristics() == vec![0]
            && r.undirected_count() == 1;
        pass &= ok;
        details.push(format!(
            "L{level}: directed {} χ {:?}, N χ {:?}, undirected {}",
            r.directed_count(),
            r.transversal.euler_characteristics(),
            n.euler_characteristics(),
            r.undirected_count()
        ));
    }
    outcome(pass, details.join("; "))
}

fn criterion_3(scenes: &[(String, Family, Vec<UnitVec3>)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut ok, mut validation_failed, mut other_failed) = (0, 0, Vec::new());
    let mut tags = BTreeSet::new();
    for (name, f, t) in scenes {
        let circles = f.separating_circles();
        let tau = f.tolerances().tau;
        for _ in 0..5 {
            let v = random_non_transversal(f, &mut rng);
            let w = t[rng.gen_range(0..t.len())];
            let result =
                refine_to_boundary(f, v, w).and_then(|b| build_boundary_path(f, b, &circles));
            match result {
                Ok(p) => {
                    let depths_ok = p.samples.iter().all(|&s| f.direction_depth(s).depth <= tau);
                    let on_y = circles.angle_to(p.end()) <= 1e-6;
                    match p.verify(f, &circles) {
                        Ok(()) if depths_ok && on_y => {
                            ok += 1;
                            tags.insert(format!("{:?}", p.case_tag));
                        }
                        Err(PathError::ValidationFailed { .. }) => validation_failed += 1,
                        _ => other_failed.push(name.clone()),
                    }
                }
                Err(PathError::ValidationFailed { .. }) => validation_failed += 1,
                Err(e) => other_failed.push(format!("{name}: {e}")),
            }
        }
    }
    outcome(
        ok == 50 && validation_failed == 0,
        format!("{ok}/50 validated, {validation_failed} ValidationFailed, cases {tags:?}, other failures {other_failed:?}"),
    )
}

fn criterion_4(scenes: &[(String, Family, Vec<UnitVec3>)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ok = 0;
    let mut failures = Vec::new();
    let mut tags = BTreeSet::new();
    for (name, f, _) in scenes {
        let circles = f.separating_circles();
        for _ in 0..10 {
            let x = random_non_transversal(f, &mut rng);
            match connect_to_separators(f, x, &circles)
                .and_then(|p| p.verify(f, &circles).map(|_| p))
            {
                Ok(p) if p.start() == x => {
                    ok += 1;
                    tags.insert(format!("{:?}", p.case_tag));
                }
                Ok(_) => failures.push(format!("{name}: wrong start")),
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
    }
    outcome(
        ok == 100,
        format!("{ok}/100 validated, cases {tags:?}, failures {failures:?}"),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    let mut pass = true;
    for stage in 0..=3 {
        let spec = CantorSpec::new(stage, 16).unwrap();
        let f = cantor_family(&spec).unwrap();
        let probes = probe_direction_curve(&f, &probe_grid(0.5, 2.5, 0.001));
        let clusters = curve_clusters(
            &probes,
            spec.curve_tolerance(f.tolerances()),
            spec.cluster_gap(),
        );
        pass &= clusters.len() == 1 << stage;
        counts.push(clusters.len());
    }
    let spec = CantorSpec::new(3, 16).unwrap();
    let f = cantor_family(&spec).unwrap();
    let d23 = f.direction_depth(ruling_direction(2.3)).depth;
    let off_curve = d23 < -spec.curve_tolerance(f.tolerances());
    let elapsed = start.elapsed().as_secs_f64();
    outcome(
        pass && off_curve && elapsed < 10.0,
        format!("clusters {counts:?} (want [1, 2, 4, 8]), depth at b = 2.3 is {d23:.3e}, {elapsed:.1} s"),
    )
}

fn criterion_6() -> Outcome {
    let f = inflate(
        &cantor_family(&CantorSpec::new(2, 8).unwrap()).unwrap(),
        0.05,
    )
    .unwrap();
    let r = contractibility_report(
        &f,
        ReportConfig {
            level: 5,
            ..Default::default()
        },
    )
    .unwrap();
    outcome(
        r.verdict == Verdict::Pass && r.directed_count() == 2,
        format!(
            "verdict {:?}, directed {}, χ {:?}, ambiguous {:.4}",
            r.verdict,
            r.directed_count(),
            r.transversal.euler_characteristics(),
            r.ambiguous_fraction
        ),
    )
}

/// Directions on a Fibonacci sphere.
fn fibonacci(n: usize) -> Vec<UnitVec3> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let a = golden * i as f64;
            UnitVec3::from_xyz(r * a.cos(), r * a.sin(), z).unwrap()
        })
        .collect()
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Transversal lines sampled over a direction grid and over each fiber,
/// joined when their directions are close and the averaged line is still
/// a transversal.
fn line_clusters(f: &Family) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut lines: Vec<DirectedLine> = Vec::new();
    for v in fibonacci(6000) {
        let Some(fiber) = f.fiber_polygon(v) else {
            continue;
        };
        lines.push(DirectedLine::from_projection(
            v,
            f.direction_depth(v).witness,
        ));
        for _ in 0..2 {
            let w: Vec<f64> = fiber
                .vertices
                .iter()
                .map(|_| rng.gen_range(0.0..1.0))
                .collect();
            let total: f64 = w.iter().sum();
            let q = fiber
                .vertices
                .iter()
                .zip(&w)
                .fold(Point2::new(0.0, 0.0), |acc, (p, &t)| acc + *p * (t / total));
            lines.push(DirectedLine::from_projection(v, q));
        }
    }
    lines.retain(|l| f.is_line_transversal(l));
    let mut parent: Vec<usize> = (0..lines.len()).collect();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lines[i].direction.angle_to(lines[j].direction) > 0.08 {
                continue;
            }
            let Some(dir) = (lines[i].direction.vec() + lines[j].direction.vec()).normalized()
            else {
                continue;
            };
            let mid = DirectedLine::new((lines[i].origin + lines[j].origin) * 0.5, dir);
            if f.is_line_transversal(&mid) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let roots: BTreeSet<usize> = (0..lines.len()).map(|i| find(&mut parent, i)).collect();
    (roots.len(), lines.len())
}

fn criterion_7(stress: &[(u64, ContractibilityReport)]) -> Outcome {
    let f = two_cubes();
    let (clusters, sampled) = line_clusters(&f);
    let directed = contractibility_report(&f, ReportConfig::default())
        .unwrap()
        .directed_count();

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut pool: Vec<(Family, UnitVec3)> = Vec::new();
    let cubes_t = transversal_centroids(&f);
    for (seed, r) in stress.iter().filter(|(_, r)| r.directed_count() > 0) {
        let fam = stress_family(*seed);
        let c = &r.classification;
        let t: Vec<usize> = (0..c.labels.len())
            .filter(|&k| c.labels[k] == DirectionClass::Transversal)
            .collect();
        for _ in 0..10 {
            pool.push((
                fam.clone(),
                c.mesh.face_centroid(t[rng.gen_range(0..t.len())]),
            ));
        }
    }
    while pool.len() < 200 {
        pool.push((f.clone(), cubes_t[rng.gen_range(0..cubes_t.len())]));
    }
    pool.truncate(200);
    let good = pool
        .iter()
        .filter(|(fam, v)| {
            fam.fiber_polygon(*v)
                .is_some_and(|p| !p.is_empty() && is_convex(&p))
        })
        .count();
    outcome(
        clusters == directed && directed == 2 && good == 200,
        format!("{clusters} line clusters from {sampled} lines vs {directed} components; {good}/200 fibers convex and nonempty"),
    )
}

fn is_convex(p: &Poly2) -> bool {
    let n = p.vertices.len();
    if n < 3 {
        return true;
    }
    (0..n).all(|i| {
        let (a, b, c) = (
            p.vertices[i],
            p.vertices[(i + 1) % n],
            p.vertices[(i + 2) % n],
        );
        (b - a).cross(c - b) >= -1e-12
    })
}

/// `max_q min_h clearance_h(q)` over a square grid with spacing `h`.
fn grid_depth(polys: &[Poly2], lo: Point2, hi: Point2, h: f64) -> f64 {
    let halfplanes: Vec<_> = polys.iter().flat_map(|p| p.halfplanes()).collect();
    let nx = ((hi.x - lo.x) / h).ceil() as usize;
    let ny = ((hi.y - lo.y) / h).ceil() as usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=nx {
        for j in 0..=ny {
            let q = Point2::new(lo.x + h * i as f64, lo.y + h * j as f64);
            let d = halfplanes
                .iter()
                .map(|hp| hp.clearance(q))
                .fold(f64::INFINITY, f64::min);
            best = best.max(d);
        }
    }
    best
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    let mut signs = (0, 0);
    for _ in 0..10 {
        let k = rng.gen_range(2..=4);
        let spread = rng.gen_range(0.2..2.5);
        let polys: Vec<Poly2> = (0..k)
            .map(|_| {
                let c = Point2::new(
                    rng.gen_range(-spread..spread),
                    rng.gen_range(-spread..spread),
                );
                let r = rng.gen_range(1.0..2.5);
                let pts: Vec<Point2> = (0..rng.gen_range(3..10))
                    .map(|_| c + Point2::new(rng.gen_range(-r..r), rng.gen_range(-r..r)))
                    .collect();
                convex_hull(&pts)
            })
            .collect();
        let all: Vec<Point2> = polys.iter().flat_map(|p| p.vertices.clone()).collect();
        let lo = all
            .iter()
            .fold(Point2::new(f64::INFINITY, f64::INFINITY), |a, p| {
                Point2::new(a.x.min(p.x), a.y.min(p.y))
            });
        let hi = all
            .iter()
            .fold(Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY), |a, p| {
                Point2::new(a.x.max(p.x), a.y.max(p.y))
            });
        let diam = (hi - lo).norm();
        let lp = common_depth(&polys).unwrap().depth;
        let oracle = grid_depth(&polys, lo, hi, 5e-4 * diam);
        if lp > 0.0 {
            signs.0 += 1;
        } else {
            signs.1 += 1;
        }
        worst = worst.max((lp - oracle).abs() / diam);
    }

    let f = stress_family(8);
    let mut asym = 0.0f64;
    for _ in 0..1000 {
        let v = random_unit(&mut rng);
        asym = asym.max((f.direction_depth(v).depth - f.direction_depth(-v).depth).abs());
    }
    outcome(
        worst <= 1e-3 && asym <= 1e-9,
        format!(
            "worst |LP − grid| = {worst:.2e}·diam over 10 sets ({} overlapping, {} disjoint); antipodal gap {asym:.1e}",
            signs.0, signs.1
        ),
    )
}

fn permutations_in(f: &Family, c: &SphereClassification) -> Vec<BTreeSet<Vec<usize>>> {
    let report = components(c, DirectionClass::Transversal);
    report
        .components
        .iter()
        .map(|comp| {
            let stride = (comp.faces.len() / 25).max(1);
            comp.faces
                .iter()
                .step_by(stride)
                .filter_map(|&face| {
                    let v = c.mesh.face_centroid(face as usize);
                    let line = DirectedLine::from_projection(v, f.direction_depth(v).witness);
                    f.geometric_permutation(&line).ok()
                })
                .collect()
        })
        .collect()
}

fn criterion_9(stress: &[(u64, ContractibilityReport)]) -> Outcome {
    let mut mixed = Vec::new();
    let mut checked = 0;
    for (seed, r) in stress {
        let f = stress_family(*seed);
        for (i, perms) in permutations_in(&f, &r.classification).iter().enumerate() {
            checked += 1;
            if perms.len() != 1 {
                mixed.push((*seed, i, perms.len()));
            }
        }
    }
    let f = two_cubes();
    let r = contractibility_report(&f, ReportConfig::default()).unwrap();
    let cube_perms = permutations_in(&f, &r.classification);
    let reversed = cube_perms.len() == 2 && cube_perms.iter().all(|p| p.len() == 1) && {
        let a = cube_perms[0].iter().next().unwrap();
        let b = cube_perms[1].iter().next().unwrap();
        a.iter().rev().eq(b.iter())
    };
    outcome(
        mixed.is_empty() && reversed,
        format!(
            "{checked} stress components, mixed {mixed:?}; cube components report {:?}",
            cube_perms
                .iter()
                .map(|p| p.iter().next().cloned())
                .collect::<Vec<_>>()
        ),
    )
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();

    let start = Instant::now();
    let stress: Vec<(u64, ContractibilityReport)> = (0..20)
        .map(|seed| {
            let r = contractibility_report(
                &stress_family(seed),
                ReportConfig {
                    level: 5,
                    ..Default::default()
                },
            );
            (seed, r.unwrap())
        })
        .collect();
    let elapsed = start.elapsed().as_secs_f64();
    results.push((
        1,
        "random families contractible at level 5",
        criterion_1(&stress, elapsed),
    ));
    results.push((2, "two-cube components at levels 4 and 5", criterion_2()));
    let scenes = path_scenes();
    results.push((
        3,
        "boundary paths from 50 refined points",
        criterion_3(&scenes),
    ));
    results.push((4, "marched paths from 100 starts", criterion_4(&scenes)));
    results.push((
        5,
        "Cantor cluster counts and off-curve probe",
        criterion_5(),
    ));
    results.push((6, "inflated stage-2 family", criterion_6()));
    results.push((7, "line clusters and convex fibers", criterion_7(&stress)));
    results.push((
        8,
        "depth LP against grid oracle, antipodal symmetry",
        criterion_8(),
    ));
    results.push((
        9,
        "geometric permutation per component",
        criterion_9(&stress),
    ));

    let mut failed = 0;
    for (k, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {k}: {name}: {}", o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
