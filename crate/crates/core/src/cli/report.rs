//! JSON reports emitted by `analyze`, `path` and `probe-curve`.

use serde::{Deserialize, Serialize};

use crate::constructions::{Cluster, CurveSample};
use crate::path::{CaseTag, SpherePath};
use crate::sphere::{Connectivity, ContractibilityReport, Verdict};
use crate::tolerance::{DirectionClass, Tolerances};
use crate::transversal::GreatCircleSet;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Directed,
    Undirected,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub report: String,
    pub version: u32,
    pub mode: Mode,
    pub level: u32,
    pub face_count: usize,
    pub body_count: usize,
    pub tolerances: Tolerances,
    pub verdict: Verdict,
    /// Directed or undirected count, following `mode`.
    pub component_count: usize,
    pub directed_component_count: usize,
    pub undirected_component_count: usize,
    pub components: Vec<ComponentSummary>,
    /// Transversal components grouped into antipodal orbits.
    pub orbits: Vec<Vec<usize>>,
    pub complement_connected: bool,
    pub complement: ComplementSummary,
    pub ambiguous_fraction: f64,
    pub face_labels: LabelCounts,
    pub separating_circles: Vec<CircleSummary>,
    pub wall_time_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub index: usize,
    pub face_count: usize,
    pub euler_characteristic: i64,
    pub is_disk: bool,
    pub antipode: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplementSummary {
    pub connectivity: Connectivity,
    pub euler_characteristics: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCounts {
    pub transversal: usize,
    pub non_transversal: usize,
    pub ambiguous: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleSummary {
    pub pair: [usize; 2],
    pub normal: [f64; 3],
}

pub fn circle_summaries(circles: &GreatCircleSet) -> Vec<CircleSummary> {
    circles
        .circles
        .iter()
        .map(|c| CircleSummary {
            pair: [c.pair.0, c.pair.1],
            normal: c.normal.vec().to_array(),
        })
        .collect()
}

impl AnalysisReport {
    pub fn new(
        report: &ContractibilityReport,
        mode: Mode,
        body_count: usize,
        tolerances: Tolerances,
        circles: &GreatCircleSet,
        wall_time_seconds: f64,
    ) -> Self {
        let c = &report.classification;
        let components: Vec<ComponentSummary> = report
            .transversal
            .components
            .iter()
            .enumerate()
            .map(|(index, k)| ComponentSummary {
                index,
                face_count: k.faces.len(),
                euler_characteristic: k.euler_characteristic,
                is_disk: k.is_disk,
                antipode: k.contains_antipode_of,
            })
            .collect();
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for (i, partner) in report.pairing() {
            match partner {
                Some(j) if j < i => {}
                Some(j) if j > i => orbits.push(vec![i, j]),
                _ => orbits.push(vec![i]),
            }
        }
        let directed = report.directed_count();
        let undirected = report.undirected_count();
        AnalysisReport {
            report: "analysis".into(),
            version: REPORT_VERSION,
            mode,
            level: c.mesh.level,
            face_count: c.mesh.face_count(),
            body_count,
            tolerances,
            verdict: report.verdict,
            component_count: if mode == Mode::Directed {
                directed
            } else {
                undirected
            },
            directed_component_count: directed,
            undirected_component_count: undirected,
            components,
            orbits,
            complement_connected: report.connectivity.is_connected(),
            complement: ComplementSummary {
                connectivity: report.connectivity,
                euler_characteristics: report.complement.euler_characteristics(),
            },
            ambiguous_fraction: report.ambiguous_fraction,
            face_labels: LabelCounts {
                transversal: c.count(DirectionClass::Transversal),
                non_transversal: c.count(DirectionClass::NonTransversal),
                ambiguous: c.count(DirectionClass::Ambiguous),
            },
            separating_circles: circle_summaries(circles),
            wall_time_seconds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathReport {
    pub report: String,
    pub version: u32,
    pub case_tag: CaseTag,
    pub start: [f64; 3],
    pub end: [f64; 3],
    pub stop_angle: f64,
    pub length: f64,
    pub witness: Option<Vec<usize>>,
    pub end_circle: CircleSummary,
    pub end_circle_distance: f64,
    pub samples: Vec<[f64; 3]>,
}

impl PathReport {
    pub fn new(path: &SpherePath, circles: &GreatCircleSet) -> Self {
        let end = path.end();
        let circle = circles
            .nearest(end)
            .expect("families have at least one circle");
        PathReport {
            report: "path".into(),
            version: REPORT_VERSION,
            case_tag: path.case_tag,
            start: path.start().vec().to_array(),
            end: end.vec().to_array(),
            stop_angle: path.stop_angle,
            length: path.length(),
            witness: path.witness.as_ref().map(|w| w.indices.clone()),
            end_circle: CircleSummary {
                pair: [circle.pair.0, circle.pair.1],
                normal: circle.normal.vec().to_array(),
            },
            end_circle_distance: circle.angle_to(end),
            samples: path.samples.iter().map(|s| s.vec().to_array()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub report: String,
    pub version: u32,
    pub tolerance: f64,
    pub gap: f64,
    pub cluster_count: usize,
    pub clusters: Vec<Cluster>,
    pub samples: Vec<CurveSample>,
}

impl ProbeReport {
    pub fn new(
        samples: Vec<CurveSample>,
        clusters: Vec<Cluster>,
        tolerance: f64,
        gap: f64,
    ) -> Self {
        ProbeReport {
            report: "probe-curve".into(),
            version: REPORT_VERSION,
            tolerance,
            gap,
            cluster_count: clusters.len(),
            clusters,
            samples,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
