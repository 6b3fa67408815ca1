//! Static two-hemisphere SVG pictures of a classified sphere.
//!
//! The left disc is the northern hemisphere seen from `+z`, the right disc
//! the southern hemisphere seen from `-z`. Coordinates are printed with two
//! decimals, so the output is byte-stable for fixed input.

use std::fmt::Write;

use crate::convex::UnitVec3;
use crate::path::SpherePath;
use crate::sphere::{components, SphereClassification};
use crate::tolerance::DirectionClass;
use crate::transversal::GreatCircleSet;

const RADIUS: f64 = 190.0;
const MARGIN: f64 = 20.0;
const CIRCLE_SAMPLES: usize = 360;

pub const NON_TRANSVERSAL_FILL: &str = "#e6e6e6";
pub const TRANSVERSAL_FILL: &str = "#2f6db5";
pub const AMBIGUOUS_FILL: &str = "#e8b93a";
pub const SEPARATOR_STROKE: &str = "#c23b22";
pub const PATH_STROKE: &str = "#1b8a3a";

#[derive(Clone, Copy, PartialEq)]
enum Hemisphere {
    North,
    South,
}

impl Hemisphere {
    /// Points within rounding of the equator go north.
    fn of(z: f64) -> Self {
        if z >= -1e-9 {
            Hemisphere::North
        } else {
            Hemisphere::South
        }
    }

    fn center_x(self) -> f64 {
        match self {
            Hemisphere::North => MARGIN + RADIUS,
            Hemisphere::South => 3.0 * MARGIN + 3.0 * RADIUS,
        }
    }

    fn project(self, u: UnitVec3) -> (f64, f64) {
        let v = u.vec();
        let x = match self {
            Hemisphere::North => v.x,
            Hemisphere::South => -v.x,
        };
        (self.center_x() + RADIUS * x, MARGIN + RADIUS - RADIUS * v.y)
    }
}

fn point_list(out: &mut String, pts: &[(f64, f64)]) {
    for (i, (x, y)) in pts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{x:.2},{y:.2}").unwrap();
    }
}

fn face_polygon(out: &mut String, c: &SphereClassification, face: usize) {
    let hemi = Hemisphere::of(c.mesh.face_centroid(face).vec().z);
    let pts: Vec<(f64, f64)> = c.mesh.faces[face]
        .iter()
        .map(|&v| hemi.project(c.mesh.vertices[v as usize]))
        .collect();
    out.push_str("    <polygon points=\"");
    point_list(out, &pts);
    out.push_str("\"/>\n");
}

fn segment(out: &mut String, a: UnitVec3, b: UnitVec3) {
    let hemi = Hemisphere::of(a.vec().z + b.vec().z);
    out.push_str("    <polyline points=\"");
    point_list(out, &[hemi.project(a), hemi.project(b)]);
    out.push_str("\"/>\n");
}

/// Renders the labeled faces, the separating circles and any paths. Only
/// transversal and ambiguous faces are drawn; the disc background carries
/// the non-transversal colour. Each transversal component gets its own
/// `<g class="transversal">` group, each path segment its own polyline.
pub fn render_sphere_svg(
    classification: Option<&SphereClassification>,
    circles: &GreatCircleSet,
    paths: &[SpherePath],
) -> String {
    let width = 4.0 * RADIUS + 4.0 * MARGIN;
    let height = 2.0 * RADIUS + 2.0 * MARGIN;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
    )
    .unwrap();
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");
    for hemi in [Hemisphere::North, Hemisphere::South] {
        let name = if hemi == Hemisphere::North {
            "north"
        } else {
            "south"
        };
        writeln!(
            out,
            "  <circle class=\"hemisphere\" id=\"{name}\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"{RADIUS:.2}\" fill=\"{NON_TRANSVERSAL_FILL}\" stroke=\"#000000\"/>",
            hemi.center_x(),
            MARGIN + RADIUS
        )
        .unwrap();
    }

    if let Some(c) = classification {
        let ambiguous: Vec<usize> = (0..c.labels.len())
            .filter(|&f| c.labels[f] == DirectionClass::Ambiguous)
            .collect();
        if !ambiguous.is_empty() {
            writeln!(out, "  <g class=\"ambiguous\" fill=\"{AMBIGUOUS_FILL}\">").unwrap();
            for f in ambiguous {
                face_polygon(&mut out, c, f);
            }
            out.push_str("  </g>\n");
        }
        for (i, comp) in components(c, DirectionClass::Transversal)
            .components
            .iter()
            .enumerate()
        {
            writeln!(
                out,
                "  <g class=\"transversal\" data-component=\"{i}\" fill=\"{TRANSVERSAL_FILL}\">"
            )
            .unwrap();
            for &f in &comp.faces {
                face_polygon(&mut out, c, f as usize);
            }
            out.push_str("  </g>\n");
        }
    }

    if !circles.is_empty() {
        writeln!(out, "  <g class=\"separators\" fill=\"none\" stroke=\"{SEPARATOR_STROKE}\" stroke-width=\"1.5\">").unwrap();
        for circle in &circles.circles {
            let mut pts = circle.sample(CIRCLE_SAMPLES);
            pts.push(pts[0]);
            let mut run: Vec<(f64, f64)> = Vec::new();
            let mut run_hemi = None;
            for w in pts.windows(2) {
                let hemi = Hemisphere::of(w[0].vec().z + w[1].vec().z);
                if run_hemi != Some(hemi) {
                    flush_run(&mut out, &mut run);
                    run.push(hemi.project(w[0]));
                    run_hemi = Some(hemi);
                }
                run.push(hemi.project(w[1]));
            }
            flush_run(&mut out, &mut run);
        }
        out.push_str("  </g>\n");
    }

    for p in paths {
        writeln!(
            out,
            "  <g class=\"path\" fill=\"none\" stroke=\"{PATH_STROKE}\" stroke-width=\"2\">"
        )
        .unwrap();
        for w in p.samples.windows(2) {
            segment(&mut out, w[0], w[1]);
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn flush_run(out: &mut String, run: &mut Vec<(f64, f64)>) {
    if run.len() >= 2 {
        out.push_str("    <polyline points=\"");
        point_list(out, run);
        out.push_str("\"/>\n");
    }
    run.clear();
}
