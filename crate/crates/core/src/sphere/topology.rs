//! Rasterized direction sets on a sphere mesh: classification, connected
//! components, Euler characteristics and the contractibility verdict.
//!
//! A component is a maximal set of same-labeled faces connected through
//! shared vertices, i.e. a connected component of the closed subcomplex the
//! faces span. Its Euler characteristic is `V − E + F` of that subcomplex;
//! a connected region with `χ = 1` is a disk on a fine enough mesh.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::tolerance::DirectionClass;
use crate::transversal::Family;

use super::mesh::{build_mesh, MeshError, SphereMesh};

/// Default largest tolerated fraction of ambiguous faces.
pub const DEFAULT_AMBIGUOUS_LIMIT: f64 = 0.02;

#[derive(Clone, Debug)]
pub struct SphereClassification {
    pub mesh: Arc<SphereMesh>,
    pub labels: Vec<DirectionClass>,
    pub depths: Vec<f64>,
}

/// Evaluates the direction depth at every face centroid. Faces are
/// independent; the LP seed of a face is the smaller index of the face and
/// its antipode, so the result does not depend on scheduling and antipodal
/// faces get bit-identical depths.
pub fn classify(family: &Family, mesh: &Arc<SphereMesh>) -> SphereClassification {
    let tol = *family.tolerances();
    let depths: Vec<f64> = (0..mesh.face_count())
        .into_par_iter()
        .map(|f| {
            let seed = f.min(mesh.antipodal_face[f] as usize) as u64;
            family
                .direction_depth_seeded(mesh.face_centroid(f), seed)
                .depth
        })
        .collect();
    let labels = depths.iter().map(|&d| tol.classify(d)).collect();
    SphereClassification {
        mesh: Arc::clone(mesh),
        labels,
        depths,
    }
}

impl SphereClassification {
    /// Classification with given labels; depths are synthetic (+1, -1, 0).
    pub fn from_labels(mesh: Arc<SphereMesh>, labels: Vec<DirectionClass>) -> Self {
        assert_eq!(labels.len(), mesh.face_count());
        let depths = labels
            .iter()
            .map(|l| match l {
                DirectionClass::Transversal => 1.0,
                DirectionClass::NonTransversal => -1.0,
                DirectionClass::Ambiguous => 0.0,
            })
            .collect();
        SphereClassification {
            mesh,
            labels,
            depths,
        }
    }

    pub fn count(&self, label: DirectionClass) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    pub fn ambiguous_fraction(&self) -> f64 {
        self.count(DirectionClass::Ambiguous) as f64 / self.labels.len().max(1) as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub faces: Vec<u32>,
    pub labels: Vec<DirectionClass>,
    pub euler_characteristic: i64,
    pub is_disk: bool,
    /// Component holding the antipode of this component's first face.
    pub contains_antipode_of: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub components: Vec<Component>,
}

impl ComponentReport {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn euler_characteristics(&self) -> Vec<i64> {
        self.components
            .iter()
            .map(|c| c.euler_characteristic)
            .collect()
    }

    /// Component index of every face, `None` outside the region.
    pub fn face_component(&self, face_count: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; face_count];
        for (ci, c) in self.components.iter().enumerate() {
            for &f in &c.faces {
                out[f as usize] = Some(ci);
            }
        }
        out
    }

    /// True when every component's antipode lies in a different component.
    pub fn antipodally_paired(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, c)| matches!(c.contains_antipode_of, Some(j) if j != i))
    }

    /// Number of orbits of components under the antipodal map.
    pub fn orbit_count(&self) -> usize {
        let mut seen = vec![false; self.components.len()];
        let mut orbits = 0;
        for i in 0..self.components.len() {
            if seen[i] {
                continue;
            }
            orbits += 1;
            seen[i] = true;
            if let Some(j) = self.components[i].contains_antipode_of {
                seen[j] = true;
            }
        }
        orbits
    }
}

struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut i: u32) -> u32 {
        while self.parent[i as usize] != i {
            let p = self.parent[i as usize];
            self.parent[i as usize] = self.parent[p as usize];
            i = p;
        }
        i
    }

    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        let (ra, rb) = (self.rank[a as usize], self.rank[b as usize]);
        if ra < rb {
            self.parent[a as usize] = b;
        } else if ra > rb {
            self.parent[b as usize] = a;
        } else {
            self.parent[b as usize] = a;
            self.rank[a as usize] += 1;
        }
    }
}

/// Components of the faces carrying `label`.
pub fn components(c: &SphereClassification, label: DirectionClass) -> ComponentReport {
    region_components(c, &[label])
}

/// Components of the faces whose label is any of `labels`.
pub fn region_components(c: &SphereClassification, labels: &[DirectionClass]) -> ComponentReport {
    let mesh = &*c.mesh;
    let selected: Vec<bool> = c.labels.iter().map(|l| labels.contains(l)).collect();
    let mut uf = UnionFind::new(mesh.face_count());
    for incident in &mesh.vertex_faces {
        let mut first: Option<u32> = None;
        for &f in incident {
            if selected[f as usize] {
                match first {
                    None => first = Some(f),
                    Some(g) => uf.union(g, f),
                }
            }
        }
    }
    // components in order of their smallest face index
    let mut root_to_component = std::collections::HashMap::new();
    let mut groups: Vec<Vec<u32>> = Vec::new();
    for f in 0..mesh.face_count() as u32 {
        if !selected[f as usize] {
            continue;
        }
        let r = uf.find(f);
        let idx = *root_to_component.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[idx].push(f);
    }
    let face_to_component: std::collections::HashMap<u32, usize> = groups
        .iter()
        .enumerate()
        .flat_map(|(ci, fs)| fs.iter().map(move |&f| (f, ci)))
        .collect();

    let components = groups
        .into_iter()
        .map(|faces| {
            let chi = closed_euler_characteristic(mesh, &faces);
            let mut present: Vec<DirectionClass> =
                faces.iter().map(|&f| c.labels[f as usize]).collect();
            present.sort();
            present.dedup();
            let antipode = mesh.antipodal_face[faces[0] as usize];
            Component {
                contains_antipode_of: face_to_component.get(&antipode).copied(),
                euler_characteristic: chi,
                is_disk: chi == 1,
                labels: present,
                faces,
            }
        })
        .collect();
    ComponentReport { components }
}

/// `V − E + F` of the closed subcomplex spanned by `faces`.
pub fn closed_euler_characteristic(mesh: &SphereMesh, faces: &[u32]) -> i64 {
    let mut verts = HashSet::new();
    let mut edges = HashSet::new();
    for &f in faces {
        verts.extend(mesh.faces[f as usize]);
        edges.extend(mesh.face_edges[f as usize]);
    }
    verts.len() as i64 - edges.len() as i64 + faces.len() as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    tag = "status",
    content = "components",
    rename_all = "SCREAMING_SNAKE_CASE"
)]
pub enum Connectivity {
    Connected,
    Disconnected(usize),
    /// No non-transversal faces at all.
    Degenerate,
}

impl Connectivity {
    pub fn is_connected(self) -> bool {
        self == Connectivity::Connected
    }
}

/// Whether the non-transversal and ambiguous faces form a single component.
pub fn complement_connected(c: &SphereClassification) -> Connectivity {
    let r = region_components(
        c,
        &[DirectionClass::NonTransversal, DirectionClass::Ambiguous],
    );
    match r.len() {
        0 => Connectivity::Degenerate,
        1 => Connectivity::Connected,
        k => Connectivity::Disconnected(k),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// Too many ambiguous faces to decide; refine the mesh.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub level: u32,
    pub ambiguous_limit: f64,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            level: 4,
            ambiguous_limit: DEFAULT_AMBIGUOUS_LIMIT,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ContractibilityReport {
    pub classification: SphereClassification,
    pub transversal: ComponentReport,
    /// Components of the non-transversal and ambiguous faces.
    pub complement: ComponentReport,
    pub connectivity: Connectivity,
    pub ambiguous_fraction: f64,
    pub verdict: Verdict,
}

impl ContractibilityReport {
    pub fn directed_count(&self) -> usize {
        self.transversal.len()
    }

    /// Undirected components: orbits of the antipodal pairing.
    pub fn undirected_count(&self) -> usize {
        self.transversal.orbit_count()
    }

    /// `(component, antipodal component)` for every transversal component.
    pub fn pairing(&self) -> Vec<(usize, Option<usize>)> {
        self.transversal
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.contains_antipode_of))
            .collect()
    }
}

/// Classifies a fresh mesh and decides whether every transversal component
/// is a disk.
pub fn contractibility_report(
    family: &Family,
    config: ReportConfig,
) -> Result<ContractibilityReport, MeshError> {
    let mesh = Arc::new(build_mesh(config.level as i64)?);
    Ok(report_for_classification(
        classify(family, &mesh),
        config.ambiguous_limit,
    ))
}

pub fn report_for_classification(
    classification: SphereClassification,
    ambiguous_limit: f64,
) -> ContractibilityReport {
    let transversal = components(&classification, DirectionClass::Transversal);
    let complement = region_components(
        &classification,
        &[DirectionClass::NonTransversal, DirectionClass::Ambiguous],
    );
    let connectivity = complement_connected(&classification);
    let ambiguous_fraction = classification.ambiguous_fraction();
    let verdict = if ambiguous_fraction > ambiguous_limit {
        Verdict::Inconclusive
    } else if connectivity.is_connected() && transversal.components.iter().all(|c| c.is_disk) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    ContractibilityReport {
        classification,
        transversal,
        complement,
        connectivity,
        ambiguous_fraction,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mesh(level: i64) -> Arc<SphereMesh> {
        Arc::new(build_mesh(level).unwrap())
    }

    #[test]
    fn all_transversal_is_one_sphere() {
        let m = mesh(2);
        let c = SphereClassification::from_labels(
            m.clone(),
            vec![DirectionClass::Transversal; m.face_count()],
        );
        let r = components(&c, DirectionClass::Transversal);
        assert_eq!(r.len(), 1);
        assert_eq!(r.components[0].euler_characteristic, 2);
        assert!(!r.components[0].is_disk);
        assert_eq!(complement_connected(&c), Connectivity::Degenerate);
    }

    #[test]
    fn two_separated_patches() {
        let m = mesh(3);
        let north = crate::convex::UnitVec3::Z;
        let labels = (0..m.face_count())
            .map(|f| {
                let z = m.face_centroid(f).dot(north.vec());
                if z.abs() > 0.8 {
                    DirectionClass::NonTransversal
                } else {
                    DirectionClass::Transversal
                }
            })
            .collect();
        let c = SphereClassification::from_labels(m, labels);
        assert_eq!(complement_connected(&c), Connectivity::Disconnected(2));
        let t = components(&c, DirectionClass::Transversal);
        assert_eq!(t.len(), 1);
        assert_eq!(t.components[0].euler_characteristic, 0);
        let n = components(&c, DirectionClass::NonTransversal);
        assert_eq!(n.euler_characteristics(), vec![1, 1]);
        assert!(n.antipodally_paired());
        assert_eq!(n.orbit_count(), 1);
    }

    #[test]
    fn single_face_is_a_disk() {
        let m = mesh(1);
        let mut labels = vec![DirectionClass::NonTransversal; m.face_count()];
        labels[7] = DirectionClass::Transversal;
        let c = SphereClassification::from_labels(m, labels);
        let t = components(&c, DirectionClass::Transversal);
        assert_eq!(t.len(), 1);
        assert!(t.components[0].is_disk);
        assert_eq!(t.components[0].contains_antipode_of, None);
        assert!(complement_connected(&c).is_connected());
    }

    #[test]
    fn vertex_ring_is_not_a_disk() {
        // all faces around a vertex except the vertex fan itself: an annulus
        let m = mesh(2);
        let center = 0usize;
        let fan: HashSet<u32> = m.vertex_faces[center].iter().copied().collect();
        let ring: HashSet<u32> = fan
            .iter()
            .flat_map(|&f| m.faces[f as usize])
            .flat_map(|v| m.vertex_faces[v as usize].iter().copied())
            .filter(|f| !fan.contains(f))
            .collect();
        let labels = (0..m.face_count() as u32)
            .map(|f| {
                if ring.contains(&f) {
                    DirectionClass::Transversal
                } else {
                    DirectionClass::NonTransversal
                }
            })
            .collect();
        let c = SphereClassification::from_labels(m, labels);
        let t = components(&c, DirectionClass::Transversal);
        assert_eq!(t.len(), 1);
        assert_eq!(t.components[0].euler_characteristic, 0);
        assert_eq!(complement_connected(&c), Connectivity::Disconnected(2));
        let r = report_for_classification(c, 0.02);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn ambiguous_overflow_is_inconclusive() {
        let m = mesh(1);
        let c = SphereClassification::from_labels(
            m.clone(),
            vec![DirectionClass::Ambiguous; m.face_count()],
        );
        let r = report_for_classification(c, 0.02);
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }
}
