//! 3-orientations, Schnyder woods and face potentials of a fixed triangulation.
//!
//! An [`Orientation3`] stores one direction bit per internal edge of a
//! [`Triangulation`]; it does not borrow the triangulation, so every
//! operation takes it explicitly.
//!
//! Colour conventions (see also [`crate::triangulation`]): edges into
//! `s_red` are red, into `s_green` green, into `s_blue` blue. Around every
//! internal vertex the counterclockwise order is
//!
//! ```text
//! out green, in red*, out blue, in green*, out red, in blue*
//! ```
//!
//! which is the clockwise order "out green, in blue, out red, in green,
//! out blue, in red" read backwards.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::triangulation::{FaceId, Triangulation, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("expected {expected} directed internal edges, got {got}")]
    WrongEdgeCount { expected: usize, got: usize },
    #[error("{0}-{1} is not an internal edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} has out-degree {out}, expected {expected}")]
    OutDegree { vertex: VertexId, out: usize, expected: usize },
    #[error("no 3-orientation found (assigned {assigned} of {edges} edges)")]
    Infeasible { assigned: usize, edges: usize },
    #[error("no Schnyder coloring satisfies the vertex condition at {vertex}")]
    NoValidColoring { vertex: VertexId },
    #[error("vertex {0} is external")]
    ExternalVertex(VertexId),
    #[error("colour tree {color} is broken at vertex {vertex}")]
    BrokenTree { color: Color, vertex: VertexId },
    #[error("edge {tail}->{head} is coloured {given}, the Schnyder wood says {derived}")]
    ColorMismatch { tail: VertexId, head: VertexId, given: Color, derived: Color },
    #[error("unknown colour {0:?}")]
    UnknownColor(String),
}

/// Edge colours, indexed like the external triple `[s_red, s_green, s_blue]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red = 0,
    Green = 1,
    Blue = 2,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Color {
        Color::ALL[i % 3]
    }

    /// The outgoing colour that follows this one counterclockwise.
    pub fn succ(self) -> Color {
        Color::from_index(self.index() + 1)
    }

    pub fn pred(self) -> Color {
        Color::from_index(self.index() + 2)
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }

    pub fn parse(s: &str) -> Result<Color, OrientationError> {
        match s {
            "red" => Ok(Color::Red),
            "green" => Ok(Color::Green),
            "blue" => Ok(Color::Blue),
            other => Err(OrientationError::UnknownColor(other.to_string())),
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Direction bits over the internal edges of a triangulation. Bit `e` set
/// means edge `(lo, hi)` is directed `lo -> hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation3 {
    words: Vec<u64>,
    n_edges: usize,
}

/// Canonical key of an orientation of a fixed triangulation.
pub type OrientationKey = Vec<u64>;

impl Orientation3 {
    fn empty(n_edges: usize) -> Self {
        Orientation3 { words: vec![0; n_edges.div_ceil(64)], n_edges }
    }

    /// Builds an orientation from directed `(tail, head)` pairs covering
    /// every internal edge exactly once. Out-degrees are not checked here.
    pub fn from_directed_edges(
        t: &Triangulation,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, OrientationError> {
        let mut o = Orientation3::empty(t.n_internal_edges());
        let mut seen = vec![false; t.n_internal_edges()];
        let mut count = 0;
        for (tail, head) in edges {
            let e = t.edge_index(tail, head).ok_or(OrientationError::NotAnEdge(tail, head))?;
            if std::mem::replace(&mut seen[e], true) {
                return Err(OrientationError::DuplicateEdge(tail, head));
            }
            o.set(e, tail < head);
            count += 1;
        }
        if count != t.n_internal_edges() {
            return Err(OrientationError::WrongEdgeCount { expected: t.n_internal_edges(), got: count });
        }
        Ok(o)
    }

    /// Rebuilds an orientation from a key produced by [`Orientation3::key`].
    pub fn from_key(t: &Triangulation, key: &OrientationKey) -> Self {
        Orientation3 { words: key.clone(), n_edges: t.n_internal_edges() }
    }

    pub fn key(&self) -> OrientationKey {
        self.words.clone()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    fn bit(&self, e: usize) -> bool {
        self.words[e / 64] >> (e % 64) & 1 == 1
    }

    fn set(&mut self, e: usize, lo_to_hi: bool) {
        if lo_to_hi {
            self.words[e / 64] |= 1 << (e % 64);
        } else {
            self.words[e / 64] &= !(1 << (e % 64));
        }
    }

    pub fn reverse_edge(&mut self, e: usize) {
        self.words[e / 64] ^= 1 << (e % 64);
    }

    /// `(tail, head)` of internal edge `e`.
    pub fn arc(&self, t: &Triangulation, e: usize) -> (VertexId, VertexId) {
        let (lo, hi) = t.internal_edges()[e];
        if self.bit(e) {
            (lo, hi)
        } else {
            (hi, lo)
        }
    }

    pub fn tail(&self, t: &Triangulation, e: usize) -> VertexId {
        self.arc(t, e).0
    }

    pub fn head(&self, t: &Triangulation, e: usize) -> VertexId {
        self.arc(t, e).1
    }

    /// True when `from`-`to` is an internal edge directed `from -> to`.
    pub fn points(&self, t: &Triangulation, from: VertexId, to: VertexId) -> bool {
        match t.edge_index(from, to) {
            Some(e) => self.bit(e) == (from < to),
            None => false,
        }
    }

    pub fn directed_edges(&self, t: &Triangulation) -> Vec<(VertexId, VertexId)> {
        (0..self.n_edges).map(|e| self.arc(t, e)).collect()
    }

    pub fn out_degree(&self, t: &Triangulation, v: VertexId) -> usize {
        t.rotation(v).iter().filter(|&&u| self.points(t, v, u)).count()
    }

    /// Out-neighbours of `v` in counterclockwise rotation order.
    pub fn out_neighbors(&self, t: &Triangulation, v: VertexId) -> Vec<VertexId> {
        t.rotation(v).iter().copied().filter(|&u| self.points(t, v, u)).collect()
    }

    /// Checks the 3-orientation condition: out-degree 3 at internal vertices
    /// and 0 at external ones.
    pub fn validate(&self, t: &Triangulation) -> Result<(), OrientationError> {
        if self.n_edges != t.n_internal_edges() {
            return Err(OrientationError::WrongEdgeCount { expected: t.n_internal_edges(), got: self.n_edges });
        }
        for v in 0..t.n_vertices() {
            let expected = if t.is_external(v) { 0 } else { 3 };
            let out = self.out_degree(t, v);
            if out != expected {
                return Err(OrientationError::OutDegree { vertex: v, out, expected });
            }
        }
        Ok(())
    }

    /// True when the three edges of the triangle `a, b, c` form a directed
    /// cycle (in either sense).
    pub fn is_directed_triangle(&self, t: &Triangulation, [a, b, c]: [VertexId; 3]) -> bool {
        let fwd = self.points(t, a, b) && self.points(t, b, c) && self.points(t, c, a);
        let bwd = self.points(t, b, a) && self.points(t, c, b) && self.points(t, a, c);
        fwd || bwd
    }

    /// A deterministic 3-orientation found by capacity-3 bipartite matching
    /// of internal edges to their tails.
    pub fn initial(t: &Triangulation) -> Result<Self, OrientationError> {
        let edges = t.internal_edges();
        let mut assigned: Vec<Option<VertexId>> = vec![None; edges.len()];
        let mut load: Vec<Vec<usize>> = vec![Vec::new(); t.n_vertices()];

        fn augment(
            e: usize,
            t: &Triangulation,
            assigned: &mut [Option<VertexId>],
            load: &mut [Vec<usize>],
            visited: &mut [bool],
        ) -> bool {
            let (a, b) = t.internal_edges()[e];
            for u in [a, b] {
                if t.is_external(u) || visited[u] {
                    continue;
                }
                visited[u] = true;
                if load[u].len() < 3 {
                    load[u].push(e);
                    assigned[e] = Some(u);
                    return true;
                }
                for slot in 0..load[u].len() {
                    let other = load[u][slot];
                    if augment_other(other, u, t, assigned, load, visited) {
                        load[u][slot] = e;
                        assigned[e] = Some(u);
                        return true;
                    }
                }
            }
            false
        }

        // Moves edge `e`, currently charged to `from`, to its other endpoint.
        fn augment_other(
            e: usize,
            from: VertexId,
            t: &Triangulation,
            assigned: &mut [Option<VertexId>],
            load: &mut [Vec<usize>],
            visited: &mut [bool],
        ) -> bool {
            let (a, b) = t.internal_edges()[e];
            let u = if a == from { b } else { a };
            if t.is_external(u) || visited[u] {
                return false;
            }
            visited[u] = true;
            if load[u].len() < 3 {
                load[u].push(e);
                assigned[e] = Some(u);
                return true;
            }
            for slot in 0..load[u].len() {
                let other = load[u][slot];
                if augment_other(other, u, t, assigned, load, visited) {
                    load[u][slot] = e;
                    assigned[e] = Some(u);
                    return true;
                }
            }
            false
        }

        let mut visited = vec![false; t.n_vertices()];
        for e in 0..edges.len() {
            visited.iter_mut().for_each(|x| *x = false);
            if !augment(e, t, &mut assigned, &mut load, &mut visited) {
                let done = assigned.iter().filter(|a| a.is_some()).count();
                return Err(OrientationError::Infeasible { assigned: done, edges: edges.len() });
            }
        }
        let arcs = edges.iter().zip(&assigned).map(|(&(a, b), tail)| {
            let tail = tail.expect("every edge assigned");
            (tail, if tail == a { b } else { a })
        });
        let o = Orientation3::from_directed_edges(t, arcs)?;
        o.validate(t)?;
        Ok(o)
    }
}

/// A 3-orientation together with its Schnyder colouring; `colors[e]` is the
/// colour of internal edge `e` (the out-colour of its tail).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchnyderWood {
    pub orientation: Orientation3,
    pub colors: Vec<Color>,
}

/// What an incident edge looks like from one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Incidence {
    Out(Color),
    In(Color),
}

impl SchnyderWood {
    /// The unique colouring of `o` satisfying the vertex condition.
    ///
    /// The rotational phase of every internal vertex (which of its three
    /// out-edges is green) is fixed at vertices next to the outer triangle
    /// and propagated along edges: an edge of colour `c` arriving at `x`
    /// sits in the sector that starts at `x`'s out-edge of colour `c.succ()`.
    pub fn derive(t: &Triangulation, o: &Orientation3) -> Result<Self, OrientationError> {
        o.validate(t)?;
        let nv = t.n_vertices();
        let outs: Vec<Vec<VertexId>> = (0..nv).map(|v| o.out_neighbors(t, v)).collect();
        let out_pos = |v: VertexId, u: VertexId| outs[v].iter().position(|&x| x == u);
        // Sector of neighbour u at v: index j of the last out-edge at or
        // before u in counterclockwise order.
        let sector = |v: VertexId, u: VertexId| -> usize {
            let rot = t.rotation(v);
            let start = rot.iter().position(|&x| x == outs[v][0]).expect("out-edge in rotation");
            let mut j = 0;
            for i in 0..rot.len() {
                let x = rot[(start + i) % rot.len()];
                if let Some(p) = out_pos(v, x) {
                    j = p;
                }
                if x == u {
                    return j;
                }
            }
            unreachable!("{u} is a neighbour of {v}")
        };
        let color_of = |phase: usize, i: usize| Color::from_index(1 + i + 3 - phase);

        let mut phase: Vec<Option<usize>> = vec![None; nv];
        let mut queue = VecDeque::new();
        let ext = t.external();
        for v in t.internal_vertices() {
            for c in Color::ALL {
                if let Some(i) = out_pos(v, ext[c.index()]) {
                    if phase[v].is_none() {
                        phase[v] = Some((i + 1 + 3 - c.index()) % 3);
                        queue.push_back(v);
                    }
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            let k = phase[v].expect("queued vertices have a phase");
            for &u in t.rotation(v) {
                if t.is_external(u) || phase[u].is_some() {
                    continue;
                }
                let ku = if let Some(i) = out_pos(v, u) {
                    let c = color_of(k, i);
                    (sector(u, v) + 3 - c.index()) % 3
                } else {
                    let c = color_of(k, sector(v, u)).pred();
                    let i = out_pos(u, v).expect("in-edge of v is an out-edge of u");
                    (1 + i + 3 - c.index()) % 3
                };
                phase[u] = Some(ku);
                queue.push_back(u);
            }
        }

        let colors = (0..t.n_internal_edges())
            .map(|e| {
                let (tail, head) = o.arc(t, e);
                let k = phase[tail].ok_or(OrientationError::NoValidColoring { vertex: tail })?;
                let i = out_pos(tail, head).expect("arc leaves its tail");
                Ok(color_of(k, i))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let wood = SchnyderWood { orientation: o.clone(), colors };
        for v in t.internal_vertices() {
            if !wood.check_vertex_condition(t, v)? {
                return Err(OrientationError::NoValidColoring { vertex: v });
            }
        }
        wood.check_trees(t)?;
        Ok(wood)
    }

    pub fn color(&self, t: &Triangulation, u: VertexId, v: VertexId) -> Option<Color> {
        t.edge_index(u, v).map(|e| self.colors[e])
    }

    /// Head of the out-edge of colour `c` at internal vertex `v`.
    pub fn parent(&self, t: &Triangulation, v: VertexId, c: Color) -> Option<VertexId> {
        t.rotation(v).iter().copied().find(|&u| {
            self.orientation.points(t, v, u) && self.color(t, v, u) == Some(c)
        })
    }

    fn incidence(&self, t: &Triangulation, v: VertexId, u: VertexId) -> Incidence {
        let c = self.color(t, v, u).expect("internal vertices only have internal edges");
        if self.orientation.points(t, v, u) {
            Incidence::Out(c)
        } else {
            Incidence::In(c)
        }
    }

    /// The vertex condition at internal vertex `v`.
    pub fn check_vertex_condition(&self, t: &Triangulation, v: VertexId) -> Result<bool, OrientationError> {
        if t.is_external(v) {
            return Err(OrientationError::ExternalVertex(v));
        }
        let labels: Vec<Incidence> = t.rotation(v).iter().map(|&u| self.incidence(t, v, u)).collect();
        let Some(start) = labels.iter().position(|&l| l == Incidence::Out(Color::Green)) else {
            return Ok(false);
        };
        let pattern = [
            (Color::Green, Color::Red),
            (Color::Blue, Color::Green),
            (Color::Red, Color::Blue),
        ];
        let mut i = 0;
        let len = labels.len();
        for (out, incoming) in pattern {
            if i >= len || labels[(start + i) % len] != Incidence::Out(out) {
                return Ok(false);
            }
            i += 1;
            while i < len && labels[(start + i) % len] == Incidence::In(incoming) {
                i += 1;
            }
        }
        Ok(i == len)
    }

    /// Every colour class is a tree spanning the internal vertices, directed
    /// to its external root.
    pub fn check_trees(&self, t: &Triangulation) -> Result<(), OrientationError> {
        let ext = t.external();
        for c in Color::ALL {
            for v in t.internal_vertices() {
                let mut cur = v;
                let mut steps = 0;
                while !t.is_external(cur) {
                    cur = self.parent(t, cur, c).ok_or(OrientationError::BrokenTree { color: c, vertex: v })?;
                    steps += 1;
                    if steps > t.n_vertices() {
                        return Err(OrientationError::BrokenTree { color: c, vertex: v });
                    }
                }
                if cur != ext[c.index()] {
                    return Err(OrientationError::BrokenTree { color: c, vertex: v });
                }
            }
        }
        Ok(())
    }

    /// Full validation: 3-orientation, vertex condition everywhere, trees.
    pub fn validate(&self, t: &Triangulation) -> Result<(), OrientationError> {
        self.orientation.validate(t)?;
        for v in t.internal_vertices() {
            if !self.check_vertex_condition(t, v)? {
                return Err(OrientationError::NoValidColoring { vertex: v });
            }
        }
        self.check_trees(t)
    }
}

/// For a 3-cycle `tri`, every edge strictly inside it that touches a
/// vertex of `tri` must point to that vertex.
pub fn interior_edges_point_inward(t: &Triangulation, o: &Orientation3, tri: [VertexId; 3]) -> bool {
    let (_, inside) = t.interior_of(tri);
    inside.iter().all(|&x| tri.iter().all(|&c| !t.adjacent(x, c) || o.points(t, x, c)))
}

/// A natural number per finite face.
pub type PotentialMap = Vec<u32>;

/// Zero on faces with an exterior edge; adjacent faces differ by at most one.
pub fn validate_potential(t: &Triangulation, x: &[u32]) -> bool {
    if x.len() != t.faces().len() {
        return false;
    }
    t.faces().iter().all(|f| {
        (!f.has_external_edge() || x[f.id] == 0)
            && t.face_neighbors(f.id).iter().all(|&g| x[f.id].abs_diff(x[g]) <= 1)
    })
}

/// The largest valid potential: dual distance to the faces on the outer
/// triangle.
pub fn max_potential(t: &Triangulation) -> PotentialMap {
    let mut dist = vec![u32::MAX; t.faces().len()];
    let mut queue: VecDeque<FaceId> = VecDeque::new();
    for f in t.faces().iter().filter(|f| f.has_external_edge()) {
        dist[f.id] = 0;
        queue.push_back(f.id);
    }
    while let Some(f) = queue.pop_front() {
        for g in t.face_neighbors(f) {
            if dist[g] == u32::MAX {
                dist[g] = dist[f] + 1;
                queue.push_back(g);
            }
        }
    }
    dist
}

/// On-disk form of a coloured orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub tail: VertexId,
    pub head: VertexId,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationJson {
    /// Path or name of the triangulation this orientation belongs to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangulation: Option<String>,
    pub edges: Vec<EdgeRecord>,
}

impl SchnyderWood {
    pub fn to_json(&self, t: &Triangulation, triangulation: Option<String>) -> OrientationJson {
        let edges = (0..t.n_internal_edges())
            .map(|e| {
                let (tail, head) = self.orientation.arc(t, e);
                EdgeRecord { tail, head, color: self.colors[e].name().to_string() }
            })
            .collect();
        OrientationJson { triangulation, edges }
    }

    /// Reads directions from JSON, derives the colouring and checks that any
    /// colours given agree with it.
    pub fn from_json(t: &Triangulation, j: &OrientationJson) -> Result<Self, OrientationError> {
        let o = Orientation3::from_directed_edges(t, j.edges.iter().map(|r| (r.tail, r.head)))?;
        let wood = SchnyderWood::derive(t, &o)?;
        for r in &j.edges {
            let given = Color::parse(&r.color)?;
            let derived = wood.color(t, r.tail, r.head).expect("edge exists");
            if given != derived {
                return Err(OrientationError::ColorMismatch { tail: r.tail, head: r.head, given, derived });
            }
        }
        Ok(wood)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::{hex_patch, random_triangulation, single_vertex, stacked};

    #[test]
    fn single_vertex_orientation_is_forced() {
        let t = single_vertex();
        let o = Orientation3::initial(&t).unwrap();
        for s in t.external() {
            assert!(o.points(&t, 3, s));
        }
        let w = SchnyderWood::derive(&t, &o).unwrap();
        let [r, g, b] = t.external();
        assert_eq!(w.color(&t, 3, r), Some(Color::Red));
        assert_eq!(w.color(&t, 3, g), Some(Color::Green));
        assert_eq!(w.color(&t, 3, b), Some(Color::Blue));
    }

    #[test]
    fn initial_orientation_on_hex_patch() {
        let t = hex_patch();
        let o = Orientation3::initial(&t).unwrap();
        o.validate(&t).unwrap();
        for v in t.internal_vertices() {
            assert_eq!(o.out_degree(&t, v), 3);
        }
        SchnyderWood::derive(&t, &o).unwrap().validate(&t).unwrap();
    }

    #[test]
    fn initial_orientation_on_random_triangulations() {
        let mut rng = crate::rng::stream(3, 0);
        for n in 1..=12 {
            let t = random_triangulation(n, &mut rng);
            let o = Orientation3::initial(&t).unwrap();
            let w = SchnyderWood::derive(&t, &o).unwrap();
            w.validate(&t).unwrap();
            // Forgetting colours and deriving again is the identity.
            assert_eq!(SchnyderWood::derive(&t, &w.orientation).unwrap(), w);
        }
    }

    #[test]
    fn swapping_two_out_colours_breaks_the_condition() {
        let t = hex_patch();
        let o = Orientation3::initial(&t).unwrap();
        let mut w = SchnyderWood::derive(&t, &o).unwrap();
        let v = 3;
        let outs = o.out_neighbors(&t, v);
        let e0 = t.edge_index(v, outs[0]).unwrap();
        let e1 = t.edge_index(v, outs[1]).unwrap();
        w.colors.swap(e0, e1);
        assert!(!w.check_vertex_condition(&t, v).unwrap());
    }

    #[test]
    fn incoming_edge_in_wrong_sector_breaks_the_condition() {
        // Two internal vertices: u = 3 joined to everything, v = 4 stacked in
        // face (u, s_green, s_blue). v -> u is red and must sit between u's
        // green and blue out-edges; recolouring it moves it to a wrong sector.
        let t = stacked(&single_vertex(), 0);
        let o = Orientation3::initial(&t).unwrap();
        let w = SchnyderWood::derive(&t, &o).unwrap();
        let (u, v) = (3, 4);
        assert!(o.points(&t, v, u));
        for c in Color::ALL {
            let mut bad = w.clone();
            let e = t.edge_index(u, v).unwrap();
            if bad.colors[e] == c {
                continue;
            }
            bad.colors[e] = c;
            assert!(!bad.check_vertex_condition(&t, u).unwrap() || !bad.check_vertex_condition(&t, v).unwrap());
        }
    }

    #[test]
    fn external_vertex_is_an_error() {
        let t = single_vertex();
        let w = SchnyderWood::derive(&t, &Orientation3::initial(&t).unwrap()).unwrap();
        assert_eq!(w.check_vertex_condition(&t, 0), Err(OrientationError::ExternalVertex(0)));
    }

    #[test]
    fn out_degree_violation_is_reported() {
        let t = hex_patch();
        let mut o = Orientation3::initial(&t).unwrap();
        o.reverse_edge(0);
        assert!(matches!(o.validate(&t), Err(OrientationError::OutDegree { .. })));
        assert!(SchnyderWood::derive(&t, &o).is_err());
    }

    #[test]
    fn potentials() {
        let t = hex_patch();
        assert!(validate_potential(&t, &vec![0; t.faces().len()]));
        let mut x = max_potential(&t);
        assert!(validate_potential(&t, &x));
        // Put 0 and 2 on adjacent faces.
        let f = t.faces().iter().find(|f| !f.has_external_edge()).unwrap().id;
        let g = t.face_neighbors(f)[0];
        x.iter_mut().for_each(|v| *v = 0);
        x[f] = 2;
        x[g] = 0;
        assert!(!validate_potential(&t, &x));
    }

    #[test]
    fn json_round_trip_and_colour_check() {
        let t = hex_patch();
        let w = SchnyderWood::derive(&t, &Orientation3::initial(&t).unwrap()).unwrap();
        let j = w.to_json(&t, Some("hex".into()));
        let text = serde_json::to_string(&j).unwrap();
        let back: OrientationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(SchnyderWood::from_json(&t, &back).unwrap(), w);
        let mut wrong = back.clone();
        wrong.edges[0].color = if wrong.edges[0].color == "red" { "blue".into() } else { "red".into() };
        assert!(matches!(SchnyderWood::from_json(&t, &wrong), Err(OrientationError::ColorMismatch { .. })));
    }
}
