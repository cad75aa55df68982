//! Embedded planar triangulations.
//!
//! A [`Triangulation`] is given by a rotation system: for every vertex the
//! counterclockwise cyclic order of its neighbours. Three vertices are
//! external and bound the infinite face. Their order is significant and
//! fixes the colour roles used by Schnyder woods:
//!
//! ```text
//! external = [s_red, s_green, s_blue]   (counterclockwise around the outer face)
//! ```
//!
//! Faces are traced with the face on the left of every dart, so finite faces
//! come out counterclockwise and the outer face is traced as
//! `s_red -> s_blue -> s_green`.

mod decompose;
mod families;
mod gadget;
mod io;

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

pub use decompose::Piece;
pub use families::{flip_random_edges, hex_patch, random_triangulation, single_vertex, stacked};
pub use gadget::{build_slow_gadget, GadgetLabels};
pub use io::TriangulationJson;

pub type VertexId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("vertex {vertex}: neighbour {neighbor} is not a vertex of the triangulation")]
    UnknownVertex { vertex: VertexId, neighbor: VertexId },
    #[error("expected 3 distinct external vertices, got {0:?}")]
    WrongExternalCount(Vec<VertexId>),
    #[error("external vertices {0} and {1} are not adjacent")]
    ExternalNotAdjacent(VertexId, VertexId),
    #[error("outer face is {found:?}, expected the external triple traced clockwise as {expected:?}")]
    OuterFace { expected: [VertexId; 3], found: Vec<VertexId> },
    #[error("rotation of vertex {vertex} lists {neighbor}, but the rotation of {neighbor} does not list {vertex}")]
    InconsistentRotation { vertex: VertexId, neighbor: VertexId },
    #[error("vertex {vertex}: loop or repeated neighbour {neighbor}")]
    NotSimple { vertex: VertexId, neighbor: VertexId },
    #[error("face with boundary {boundary:?} is not a triangle")]
    NonTriangularFace { boundary: Vec<VertexId> },
    #[error("embedding is not a connected planar map (V - E + F = {euler}, components = {components})")]
    NotPlanar { euler: i64, components: usize },
    #[error("n_internal = {declared}, but the rotation system has {actual} internal vertices")]
    CountMismatch { declared: usize, actual: usize },
    #[error("a triangulation needs at least one internal vertex")]
    NoInternalVertex,
    #[error("edge {0}-{1} cannot be flipped")]
    NotFlippable(VertexId, VertexId),
    #[error("gadget parameter t = {0} is too small (need t >= 2)")]
    TooSmall(usize),
}

/// A finite face, stored counterclockwise starting at its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub vertices: [VertexId; 3],
    /// `edges[i]` is the internal edge index of `vertices[i]`-`vertices[i + 1]`,
    /// or `None` for an external edge.
    pub edges: [Option<usize>; 3],
}

impl Face {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_external_edge(&self) -> bool {
        self.edges.iter().any(Option::is_none)
    }

    /// Sorted vertex triple, the canonical identity of the face.
    pub fn key(&self) -> [VertexId; 3] {
        let mut k = self.vertices;
        k.sort_unstable();
        k
    }
}

/// A 3-cycle of the graph other than the outer triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    /// Sorted vertices.
    pub vertices: [VertexId; 3],
    /// Internal edge indices of `v0v1`, `v1v2`, `v2v0` (`None` if external).
    pub edges: [Option<usize>; 3],
    /// The finite face bounded by this triangle, if any.
    pub face: Option<FaceId>,
}

impl Triangle {
    pub fn is_facial(&self) -> bool {
        self.face.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct Triangulation {
    external: [VertexId; 3],
    rotation: Vec<Vec<VertexId>>,
    is_external: Vec<bool>,
    internal_edges: Vec<(VertexId, VertexId)>,
    edge_index: HashMap<(VertexId, VertexId), usize>,
    faces: Vec<Face>,
    left_face: HashMap<(VertexId, VertexId), Option<FaceId>>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.external == other.external && self.rotation_normalized() == other.rotation_normalized()
    }
}

impl Eq for Triangulation {}

fn ordered(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Triangulation {
    /// Validates a rotation system and builds the triangulation.
    ///
    /// `rotation[v]` is the counterclockwise neighbour cycle of `v`; vertex
    /// ids are `0..rotation.len()`.
    pub fn from_rotation(
        external: [VertexId; 3],
        rotation: Vec<Vec<VertexId>>,
    ) -> Result<Self, TriangulationError> {
        let nv = rotation.len();
        let [r, g, b] = external;
        if r == g || g == b || r == b || external.iter().any(|&s| s >= nv) {
            return Err(TriangulationError::WrongExternalCount(external.to_vec()));
        }
        if nv < 4 {
            return Err(TriangulationError::NoInternalVertex);
        }

        let mut seen = HashSet::new();
        for (v, nbrs) in rotation.iter().enumerate() {
            seen.clear();
            for &u in nbrs {
                if u >= nv {
                    return Err(TriangulationError::UnknownVertex { vertex: v, neighbor: u });
                }
                if u == v || !seen.insert(u) {
                    return Err(TriangulationError::NotSimple { vertex: v, neighbor: u });
                }
            }
        }
        for (v, nbrs) in rotation.iter().enumerate() {
            for &u in nbrs {
                if !rotation[u].contains(&v) {
                    return Err(TriangulationError::InconsistentRotation { vertex: v, neighbor: u });
                }
            }
        }
        for (a, c) in [(r, g), (g, b), (b, r)] {
            if !rotation[a].contains(&c) {
                return Err(TriangulationError::ExternalNotAdjacent(a, c));
            }
        }

        // Face tracing: the face left of u->v continues with v->w where w
        // precedes u in the counterclockwise rotation of v.
        let position: HashMap<(VertexId, VertexId), usize> = rotation
            .iter()
            .enumerate()
            .flat_map(|(v, nbrs)| nbrs.iter().enumerate().map(move |(i, &u)| ((v, u), i)))
            .collect();
        let prev_ccw = |v: VertexId, u: VertexId| -> VertexId {
            let rot = &rotation[v];
            let i = position[&(v, u)];
            rot[(i + rot.len() - 1) % rot.len()]
        };

        let mut traced: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        let mut cycles: Vec<Vec<VertexId>> = Vec::new();
        for (v, nbrs) in rotation.iter().enumerate() {
            for &u in nbrs {
                if traced.contains_key(&(v, u)) {
                    continue;
                }
                let idx = cycles.len();
                let mut boundary = Vec::new();
                let (mut a, mut c) = (v, u);
                loop {
                    traced.insert((a, c), idx);
                    boundary.push(a);
                    let w = prev_ccw(c, a);
                    a = c;
                    c = w;
                    if (a, c) == (v, u) {
                        break;
                    }
                    if boundary.len() > 3 * nv {
                        break;
                    }
                }
                cycles.push(boundary);
            }
        }
        if let Some(bad) = cycles.iter().find(|c| c.len() != 3) {
            return Err(TriangulationError::NonTriangularFace { boundary: bad.clone() });
        }

        let n_edges = position.len() / 2;
        let euler = nv as i64 - n_edges as i64 + cycles.len() as i64;
        let components = count_components(&rotation);
        if euler != 2 || components != 1 {
            return Err(TriangulationError::NotPlanar { euler, components });
        }

        let outer_idx = traced[&(r, b)];
        let outer = &cycles[outer_idx];
        let expected = [r, b, g];
        let rotated: Vec<VertexId> = {
            let k = outer.iter().position(|&x| x == r).unwrap_or(0);
            (0..3).map(|i| outer[(k + i) % 3]).collect()
        };
        if rotated != expected {
            return Err(TriangulationError::OuterFace { expected, found: outer.clone() });
        }

        let mut is_external = vec![false; nv];
        for s in external {
            is_external[s] = true;
        }

        let outer_edges: HashSet<(VertexId, VertexId)> =
            [ordered(r, g), ordered(g, b), ordered(b, r)].into_iter().collect();
        let mut internal_edges: Vec<(VertexId, VertexId)> = position
            .keys()
            .filter(|&&(v, u)| v < u)
            .map(|&(v, u)| (v, u))
            .filter(|e| !outer_edges.contains(e))
            .collect();
        internal_edges.sort_unstable();
        let edge_index: HashMap<(VertexId, VertexId), usize> =
            internal_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

        let mut finite: Vec<[VertexId; 3]> = cycles
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != outer_idx)
            .map(|(_, c)| {
                let k = (0..3).min_by_key(|&i| c[i]).unwrap_or(0);
                [c[k], c[(k + 1) % 3], c[(k + 2) % 3]]
            })
            .collect();
        finite.sort_unstable_by_key(|f| {
            let mut s = *f;
            s.sort_unstable();
            s
        });
        let faces: Vec<Face> = finite
            .iter()
            .enumerate()
            .map(|(id, &vertices)| {
                let edges = std::array::from_fn(|i| {
                    edge_index.get(&ordered(vertices[i], vertices[(i + 1) % 3])).copied()
                });
                Face { id, vertices, edges }
            })
            .collect();

        let mut left_face: HashMap<(VertexId, VertexId), Option<FaceId>> = HashMap::new();
        for f in &faces {
            for i in 0..3 {
                left_face.insert((f.vertices[i], f.vertices[(i + 1) % 3]), Some(f.id));
            }
        }
        for i in 0..3 {
            left_face.insert((expected[i], expected[(i + 1) % 3]), None);
        }

        Ok(Triangulation { external, rotation, is_external, internal_edges, edge_index, faces, left_face })
    }

    /// Builds a triangulation from its finite faces, each listed
    /// counterclockwise. The outer face is implied by `external`.
    pub fn from_faces(
        n_vertices: usize,
        external: [VertexId; 3],
        faces: &[[VertexId; 3]],
    ) -> Result<Self, TriangulationError> {
        let [r, g, b] = external;
        let mut succ: HashMap<(VertexId, VertexId), VertexId> = HashMap::new();
        let outer = [r, b, g];
        for f in faces.iter().chain(std::iter::once(&outer)) {
            for i in 0..3 {
                let (v, a, c) = (f[i], f[(i + 1) % 3], f[(i + 2) % 3]);
                if v >= n_vertices || a >= n_vertices || c >= n_vertices {
                    let bad = [v, a, c].into_iter().find(|&x| x >= n_vertices).unwrap_or(v);
                    return Err(TriangulationError::UnknownVertex { vertex: v, neighbor: bad });
                }
                if succ.insert((v, a), c).is_some() {
                    return Err(TriangulationError::NotSimple { vertex: v, neighbor: a });
                }
            }
        }
        let mut rotation = vec![Vec::new(); n_vertices];
        let mut first: Vec<Option<VertexId>> = vec![None; n_vertices];
        let mut keys: Vec<&(VertexId, VertexId)> = succ.keys().collect();
        keys.sort_unstable();
        for &&(v, a) in &keys {
            if first[v].is_none() {
                first[v] = Some(a);
            }
        }
        for v in 0..n_vertices {
            let Some(start) = first[v] else { continue };
            let mut cur = start;
            loop {
                rotation[v].push(cur);
                match succ.get(&(v, cur)) {
                    Some(&nx) => cur = nx,
                    None => {
                        return Err(TriangulationError::NonTriangularFace { boundary: vec![v, cur] });
                    }
                }
                if cur == start {
                    break;
                }
                if rotation[v].len() > n_vertices {
                    return Err(TriangulationError::NotSimple { vertex: v, neighbor: cur });
                }
            }
            let degree_from_faces = keys.iter().filter(|k| k.0 == v).count();
            if rotation[v].len() != degree_from_faces {
                // Faces around v do not close up into a single disc.
                return Err(TriangulationError::NotPlanar { euler: 0, components: 0 });
            }
        }
        Triangulation::from_rotation(external, rotation)
    }

    pub fn n_vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn n_internal(&self) -> usize {
        self.rotation.len() - 3
    }

    /// `[s_red, s_green, s_blue]`.
    pub fn external(&self) -> [VertexId; 3] {
        self.external
    }

    pub fn is_external(&self, v: VertexId) -> bool {
        self.is_external[v]
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n_vertices()).filter(move |&v| !self.is_external[v])
    }

    /// Counterclockwise neighbour cycle of `v`.
    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<VertexId>] {
        &self.rotation
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    /// Maximum degree over internal vertices.
    pub fn max_internal_degree(&self) -> usize {
        self.internal_vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.rotation[u].contains(&v)
    }

    fn position(&self, v: VertexId, u: VertexId) -> usize {
        self.rotation[v]
            .iter()
            .position(|&x| x == u)
            .unwrap_or_else(|| panic!("{u} is not a neighbour of {v}"))
    }

    /// Neighbour following `u` counterclockwise around `v`.
    pub fn next_ccw(&self, v: VertexId, u: VertexId) -> VertexId {
        let rot = &self.rotation[v];
        rot[(self.position(v, u) + 1) % rot.len()]
    }

    /// Neighbour preceding `u` counterclockwise around `v` (next clockwise).
    pub fn prev_ccw(&self, v: VertexId, u: VertexId) -> VertexId {
        let rot = &self.rotation[v];
        rot[(self.position(v, u) + rot.len() - 1) % rot.len()]
    }

    /// Internal edges as `(lo, hi)` pairs; the index into this slice is the
    /// edge index used by orientations.
    pub fn internal_edges(&self) -> &[(VertexId, VertexId)] {
        &self.internal_edges
    }

    pub fn n_internal_edges(&self) -> usize {
        self.internal_edges.len()
    }

    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edge_index.get(&ordered(u, v)).copied()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    /// The finite face on the left of the dart `u -> v`; `None` for the outer face.
    pub fn left_face(&self, u: VertexId, v: VertexId) -> Option<FaceId> {
        self.left_face.get(&(u, v)).copied().flatten()
    }

    /// The finite face with the given vertex set, if it exists.
    pub fn face_with(&self, a: VertexId, b: VertexId, c: VertexId) -> Option<FaceId> {
        let f = self.left_face(a, b)?;
        self.faces[f].contains(c).then_some(f)
    }

    /// The two faces on either side of internal edge `e`.
    pub fn edge_faces(&self, e: usize) -> (FaceId, FaceId) {
        let (u, v) = self.internal_edges[e];
        let f = self.left_face(u, v).expect("internal edge borders finite faces");
        let g = self.left_face(v, u).expect("internal edge borders finite faces");
        (f, g)
    }

    /// Faces sharing an internal edge with `f`.
    pub fn face_neighbors(&self, f: FaceId) -> Vec<FaceId> {
        self.faces[f]
            .edges
            .iter()
            .flatten()
            .map(|&e| {
                let (a, b) = self.edge_faces(e);
                if a == f {
                    b
                } else {
                    a
                }
            })
            .collect()
    }

    /// Every 3-cycle except the outer triangle, each listed once with its
    /// facial/non-facial tag.
    pub fn find_triangles(&self) -> Vec<Triangle> {
        let mut ext = self.external;
        ext.sort_unstable();
        let mut out = Vec::new();
        for u in 0..self.n_vertices() {
            for &v in self.rotation[u].iter().filter(|&&v| v > u) {
                for &w in self.rotation[v].iter().filter(|&&w| w > v) {
                    if !self.adjacent(u, w) || [u, v, w] == ext {
                        continue;
                    }
                    let vertices = [u, v, w];
                    let edges = [self.edge_index(u, v), self.edge_index(v, w), self.edge_index(w, u)];
                    let face = self.face_with(u, v, w).or_else(|| self.face_with(u, w, v));
                    out.push(Triangle { vertices, edges, face });
                }
            }
        }
        out.sort_unstable_by_key(|t| t.vertices);
        out
    }

    /// True when every 3-cycle other than the outer one bounds a face.
    pub fn is_four_connected(&self) -> bool {
        self.find_triangles().iter().all(Triangle::is_facial)
    }

    /// Replaces internal edge `xy` by the other diagonal of its quadrilateral.
    pub fn flipped(&self, x: VertexId, y: VertexId) -> Result<Triangulation, TriangulationError> {
        if self.edge_index(x, y).is_none() {
            return Err(TriangulationError::NotFlippable(x, y));
        }
        let p = self.prev_ccw(y, x);
        let q = self.prev_ccw(x, y);
        if p == q || self.adjacent(p, q) {
            return Err(TriangulationError::NotFlippable(x, y));
        }
        let mut rotation = self.rotation.clone();
        rotation[x].retain(|&u| u != y);
        rotation[y].retain(|&u| u != x);
        // Face (x, y, p) is counterclockwise, so y follows x around p.
        let i = rotation[p].iter().position(|&u| u == x).unwrap_or(0);
        rotation[p].insert(i + 1, q);
        // Face (y, x, q): x follows y around q.
        let j = rotation[q].iter().position(|&u| u == y).unwrap_or(0);
        rotation[q].insert(j + 1, p);
        Triangulation::from_rotation(self.external, rotation)
    }

    /// Rotation lists rotated to start at their smallest entry.
    fn rotation_normalized(&self) -> Vec<Vec<VertexId>> {
        self.rotation
            .iter()
            .map(|rot| {
                let k = (0..rot.len()).min_by_key(|&i| rot[i]).unwrap_or(0);
                (0..rot.len()).map(|i| rot[(k + i) % rot.len()]).collect()
            })
            .collect()
    }

    /// Interior of the closed triangle `c` (any 3-cycle): the finite faces and
    /// vertices strictly inside it, i.e. on the side away from the outer face.
    pub fn interior_of(&self, c: [VertexId; 3]) -> (Vec<FaceId>, Vec<VertexId>) {
        let cut: HashSet<(VertexId, VertexId)> =
            [ordered(c[0], c[1]), ordered(c[1], c[2]), ordered(c[2], c[0])].into_iter().collect();
        // Flood the dual from the faces along the outer triangle without
        // crossing the edges of c.
        let mut outside = vec![false; self.faces.len()];
        let mut queue = VecDeque::new();
        let [r, g, b] = self.external;
        for (u, v) in [(r, g), (g, b), (b, r)] {
            if cut.contains(&ordered(u, v)) {
                continue;
            }
            if let Some(f) = self.left_face(u, v).or_else(|| self.left_face(v, u)) {
                if !outside[f] {
                    outside[f] = true;
                    queue.push_back(f);
                }
            }
        }
        while let Some(f) = queue.pop_front() {
            let face = &self.faces[f];
            for i in 0..3 {
                let (a, b2) = (face.vertices[i], face.vertices[(i + 1) % 3]);
                if cut.contains(&ordered(a, b2)) {
                    continue;
                }
                if let Some(g2) = self.left_face(b2, a) {
                    if !outside[g2] {
                        outside[g2] = true;
                        queue.push_back(g2);
                    }
                }
            }
        }
        let inside_faces: Vec<FaceId> = (0..self.faces.len()).filter(|&f| !outside[f]).collect();
        let mut touched_outside = vec![false; self.n_vertices()];
        for f in (0..self.faces.len()).filter(|&f| outside[f]) {
            for &v in &self.faces[f].vertices {
                touched_outside[v] = true;
            }
        }
        let inside_vertices: Vec<VertexId> = inside_faces
            .iter()
            .flat_map(|&f| self.faces[f].vertices)
            .filter(|&v| !c.contains(&v) && !touched_outside[v] && !self.is_external[v])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        (inside_faces, inside_vertices)
    }
}

fn count_components(rotation: &[Vec<VertexId>]) -> usize {
    let mut seen = vec![false; rotation.len()];
    let mut components = 0;
    for s in 0..rotation.len() {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in &rotation[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Triangulation {
        single_vertex()
    }

    #[test]
    fn single_internal_vertex_counts() {
        let t = k4();
        assert_eq!(t.n_internal(), 1);
        assert_eq!(t.n_internal_edges(), 3);
        assert_eq!(t.faces().len(), 3);
        for f in t.faces() {
            assert!(f.contains(3));
        }
    }

    #[test]
    fn quadrilateral_face_is_rejected() {
        // Outer triangle 0,1,2 with a 4th vertex adjacent to only 0 and 1:
        // the region 1-2-0-3 is a quadrilateral.
        let rotation = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 1], vec![0, 1]];
        let err = Triangulation::from_rotation([0, 1, 2], rotation).unwrap_err();
        assert!(matches!(err, TriangulationError::NonTriangularFace { .. }), "{err:?}");
    }

    #[test]
    fn asymmetric_rotation_is_rejected() {
        let mut rot = k4().rotations().to_vec();
        rot[3].retain(|&u| u != 0);
        let err = Triangulation::from_rotation([0, 1, 2], rot).unwrap_err();
        assert!(matches!(err, TriangulationError::InconsistentRotation { .. }), "{err:?}");
    }

    #[test]
    fn repeated_external_is_rejected() {
        let rot = k4().rotations().to_vec();
        let err = Triangulation::from_rotation([0, 0, 2], rot).unwrap_err();
        assert!(matches!(err, TriangulationError::WrongExternalCount(_)));
    }

    #[test]
    fn loop_is_rejected() {
        let mut rot = k4().rotations().to_vec();
        rot[3].push(3);
        let err = Triangulation::from_rotation([0, 1, 2], rot).unwrap_err();
        assert!(matches!(err, TriangulationError::NotSimple { vertex: 3, neighbor: 3 }));
    }

    #[test]
    fn reversed_external_order_is_rejected() {
        let rot = k4().rotations().to_vec();
        let err = Triangulation::from_rotation([0, 2, 1], rot).unwrap_err();
        assert!(matches!(err, TriangulationError::OuterFace { .. }), "{err:?}");
    }

    #[test]
    fn k4_triangles_exclude_outer() {
        let t = k4();
        let tris = t.find_triangles();
        assert_eq!(tris.len(), 3);
        assert!(tris.iter().all(Triangle::is_facial));
    }

    #[test]
    fn hex_patch_is_valid_with_bounded_degree() {
        let t = hex_patch();
        assert_eq!(t.n_internal(), 7);
        assert_eq!(t.n_internal_edges(), 21);
        assert_eq!(t.faces().len(), 15);
        assert!(t.max_internal_degree() <= 6);
        assert!(t.is_four_connected());
        assert_eq!(t.find_triangles().len(), t.faces().len());
    }

    #[test]
    fn separating_triangle_adds_one_triangle() {
        // Stack into a face of the 4-connected hex patch: the face becomes a
        // separating triangle.
        let base = hex_patch();
        let t = stacked(&base, 0);
        let tris = t.find_triangles();
        assert_eq!(tris.len(), t.faces().len() + 1);
        assert_eq!(tris.iter().filter(|x| !x.is_facial()).count(), 1);
    }

    #[test]
    fn euler_and_edge_counts_hold() {
        for t in [k4(), hex_patch(), build_slow_gadget(3).unwrap().0] {
            let n = t.n_internal();
            assert_eq!(t.n_internal_edges(), 3 * n);
            assert_eq!(t.faces().len(), 2 * n + 1);
            let v = t.n_vertices() as i64;
            let e = (t.n_internal_edges() + 3) as i64;
            let f = (t.faces().len() + 1) as i64;
            assert_eq!(v - e + f, 2);
        }
    }

    #[test]
    fn faces_are_sorted_by_vertex_triple() {
        let t = hex_patch();
        let keys: Vec<_> = t.faces().iter().map(Face::key).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn flip_is_an_involution() {
        let t = hex_patch();
        let (x, y) = t.internal_edges()[5];
        let p = t.prev_ccw(y, x);
        let q = t.prev_ccw(x, y);
        let f = t.flipped(x, y).unwrap();
        assert!(f.adjacent(p, q) && !f.adjacent(x, y));
        let back = f.flipped(p, q).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn flip_creating_multi_edge_is_refused() {
        let t = k4();
        for &(x, y) in t.internal_edges() {
            assert!(t.flipped(x, y).is_err());
        }
    }
}
