//! Subdivided icosahedral meshes of the unit sphere with adjacency tables
//! and the antipodal involution.

use std::collections::HashMap;

use thiserror::Error;

use crate::convex::{UnitVec3, Vec3};

pub const MAX_LEVEL: u32 = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeshError {
    #[error("mesh level {0} outside 0..={MAX_LEVEL}")]
    LevelOutOfRange(i64),
}

#[derive(Clone, Debug)]
pub struct SphereMesh {
    pub level: u32,
    pub vertices: Vec<UnitVec3>,
    /// Counterclockwise seen from outside.
    pub faces: Vec<[u32; 3]>,
    /// Sorted vertex pairs.
    pub edges: Vec<[u32; 2]>,
    /// Edge indices of each face, opposite to vertex 0, 1, 2 in turn.
    pub face_edges: Vec<[u32; 3]>,
    /// Faces across each face edge.
    pub face_neighbors: Vec<[u32; 3]>,
    /// Faces incident to each vertex.
    pub vertex_faces: Vec<Vec<u32>>,
    pub antipodal_vertex: Vec<u32>,
    pub antipodal_face: Vec<u32>,
}

fn icosahedron() -> (Vec<Vec3>, Vec<[u32; 3]>) {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let norm = (1.0 + phi * phi).sqrt();
    let verts = raw.iter().map(|a| Vec3::from(*a) / norm).collect();
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (verts, faces)
}

fn key(v: Vec3) -> [u64; 3] {
    // +0.0 and -0.0 must hash alike
    let f = |x: f64| if x == 0.0 { 0u64 } else { x.to_bits() };
    [f(v.x), f(v.y), f(v.z)]
}

/// Icosahedron subdivided `level` times with midpoints pushed to the sphere.
pub fn build_mesh(level: i64) -> Result<SphereMesh, MeshError> {
    if !(0..=MAX_LEVEL as i64).contains(&level) {
        return Err(MeshError::LevelOutOfRange(level));
    }
    let (mut verts, mut faces) = icosahedron();
    for _ in 0..level {
        let mut mid: HashMap<(u32, u32), u32> = HashMap::with_capacity(faces.len() * 3 / 2);
        let mut next = Vec::with_capacity(faces.len() * 4);
        let mut midpoint = |a: u32, b: u32, verts: &mut Vec<Vec3>| -> u32 {
            let k = if a < b { (a, b) } else { (b, a) };
            *mid.entry(k).or_insert_with(|| {
                // symmetric in a, b so antipodal edges give exactly negated midpoints
                let s = verts[k.0 as usize] + verts[k.1 as usize];
                verts.push(s / s.norm());
                (verts.len() - 1) as u32
            })
        };
        for &[a, b, c] in &faces {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.push([a, ab, ca]);
            next.push([b, bc, ab]);
            next.push([c, ca, bc]);
            next.push([ab, bc, ca]);
        }
        faces = next;
    }
    Ok(assemble(level as u32, verts, faces))
}

fn assemble(level: u32, verts: Vec<Vec3>, faces: Vec<[u32; 3]>) -> SphereMesh {
    let mut edge_index: HashMap<(u32, u32), u32> = HashMap::with_capacity(faces.len() * 3 / 2);
    let mut edges = Vec::new();
    let mut edge_faces: Vec<Vec<u32>> = Vec::new();
    let mut face_edges = Vec::with_capacity(faces.len());
    for (fi, f) in faces.iter().enumerate() {
        let mut fe = [0u32; 3];
        for k in 0..3 {
            let (a, b) = (f[(k + 1) % 3], f[(k + 2) % 3]);
            let e = if a < b { (a, b) } else { (b, a) };
            let idx = *edge_index.entry(e).or_insert_with(|| {
                edges.push([e.0, e.1]);
                edge_faces.push(Vec::with_capacity(2));
                (edges.len() - 1) as u32
            });
            edge_faces[idx as usize].push(fi as u32);
            fe[k] = idx;
        }
        face_edges.push(fe);
    }
    let face_neighbors = face_edges
        .iter()
        .enumerate()
        .map(|(fi, fe)| {
            fe.map(|e| {
                let pair = &edge_faces[e as usize];
                debug_assert_eq!(pair.len(), 2, "closed manifold mesh");
                if pair[0] as usize == fi {
                    pair[1]
                } else {
                    pair[0]
                }
            })
        })
        .collect();
    let mut vertex_faces = vec![Vec::with_capacity(6); verts.len()];
    for (fi, f) in faces.iter().enumerate() {
        for &v in f {
            vertex_faces[v as usize].push(fi as u32);
        }
    }

    let lookup: HashMap<[u64; 3], u32> = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (key(v), i as u32))
        .collect();
    let antipodal_vertex: Vec<u32> = verts
        .iter()
        .map(|&v| *lookup.get(&key(-v)).expect("mesh is centrally symmetric"))
        .collect();
    let face_lookup: HashMap<[u32; 3], u32> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut s = *f;
            s.sort_unstable();
            (s, i as u32)
        })
        .collect();
    let antipodal_face = faces
        .iter()
        .map(|f| {
            let mut s = f.map(|v| antipodal_vertex[v as usize]);
            s.sort_unstable();
            *face_lookup.get(&s).expect("antipodal face exists")
        })
        .collect();

    SphereMesh {
        level,
        vertices: verts.into_iter().map(UnitVec3::new_unchecked).collect(),
        faces,
        edges,
        face_edges,
        face_neighbors,
        vertex_faces,
        antipodal_vertex,
        antipodal_face,
    }
}

impl SphereMesh {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Normalized vertex average; antipodal faces get exactly negated
    /// centroids.
    pub fn face_centroid(&self, f: usize) -> UnitVec3 {
        // sum in an order shared with the antipodal face
        let mut vs = self.faces[f];
        vs.sort_unstable_by_key(|&v| v.min(self.antipodal_vertex[v as usize]));
        let [a, b, c] = vs.map(|v| self.vertices[v as usize].vec());
        let s = a + b + c;
        UnitVec3::new(s).expect("face vertices are not coplanar with the origin")
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Largest angular edge length, a bound on the mesh spacing.
    pub fn max_edge_angle(&self) -> f64 {
        self.edges
            .iter()
            .map(|&[a, b]| self.vertices[a as usize].angle_to(self.vertices[b as usize]))
            .fold(0.0, f64::max)
    }
}
