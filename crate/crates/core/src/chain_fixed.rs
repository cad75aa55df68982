//! Chains on the 3-orientations of one fixed triangulation: the
//! triangle-reversing chain `M_TR` and the tower chain `M_CR`.

use std::fmt::Write as _;

use num_rational::Ratio;
use rand::Rng;
use thiserror::Error;

use crate::orientation::Orientation3;
use crate::triangulation::{FaceId, Triangulation, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("invalid tower: {0}")]
    InvalidTower(String),
}

/// Faces `f_1..f_k`, each chained to the next through its disagreeing
/// edge, ending in the only directed face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub faces: Vec<FaceId>,
    /// The directed cycle around the union of the faces, as arcs.
    pub boundary: Vec<(VertexId, VertexId)>,
}

impl Tower {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    Triangle,
    Tower,
}

/// One accepted move, for trajectory logs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub step: u64,
    pub kind: MoveKind,
    /// Face ids (towers) or the sorted vertex triple (triangles).
    pub items: Vec<usize>,
    /// True when the reversed cycle runs counterclockwise afterwards.
    pub ccw_after: bool,
}

impl MoveRecord {
    pub fn log_line(&self) -> String {
        let kind = match self.kind {
            MoveKind::Triangle => "triangle",
            MoveKind::Tower => "tower",
        };
        let mut s = format!("{} {}", self.step, kind);
        for (i, x) in self.items.iter().enumerate() {
            let _ = write!(s, "{}{}", if i == 0 { " " } else { "," }, x);
        }
        s.push_str(if self.ccw_after { " ccw" } else { " cw" });
        s
    }
}

/// `M_TR` and `M_CR` on a fixed triangulation.
#[derive(Debug, Clone)]
pub struct FixedChain {
    tri: Triangulation,
    triangles: Vec<[VertexId; 3]>,
}

impl FixedChain {
    pub fn new(tri: Triangulation) -> Self {
        let triangles = tri.find_triangles().into_iter().map(|t| t.vertices).collect();
        FixedChain { tri, triangles }
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    /// All 3-cycles except the outer one, facial or not.
    pub fn triangles(&self) -> &[[VertexId; 3]] {
        &self.triangles
    }

    /// True when `a -> b -> c -> a` is directed; false when it is directed the
    /// other way round; `None` when it is not a directed cycle.
    fn cyclic_sense(&self, o: &Orientation3, [a, b, c]: [VertexId; 3]) -> Option<bool> {
        let t = &self.tri;
        if o.points(t, a, b) && o.points(t, b, c) && o.points(t, c, a) {
            Some(true)
        } else if o.points(t, b, a) && o.points(t, c, b) && o.points(t, a, c) {
            Some(false)
        } else {
            None
        }
    }

    /// Reverses triangle `tri` if it is directed. Returns whether it was.
    pub fn reverse_triangle(&self, o: &mut Orientation3, tri: [VertexId; 3]) -> bool {
        if self.cyclic_sense(o, tri).is_none() {
            return false;
        }
        for k in 0..3 {
            let e = self.tri.edge_index(tri[k], tri[(k + 1) % 3]).expect("triangle edges are internal");
            o.reverse_edge(e);
        }
        true
    }

    /// One `M_TR` step: a uniform triangle, then a fair coin.
    pub fn mtr_step<R: Rng + ?Sized>(&self, o: &mut Orientation3, rng: &mut R) -> Option<MoveRecord> {
        let i = rng.gen_range(0..self.triangles.len());
        let coin = rng.gen_bool(0.5);
        let tri = self.triangles[i];
        if coin && self.reverse_triangle(o, tri) {
            let ccw_after = self.tri_is_ccw(tri) == self.cyclic_sense(o, tri).expect("still directed");
            return Some(MoveRecord { step: 0, kind: MoveKind::Triangle, items: tri.to_vec(), ccw_after });
        }
        None
    }

    /// Whether the vertex order of `tri` is counterclockwise in the embedding.
    fn tri_is_ccw(&self, [a, b, c]: [VertexId; 3]) -> bool {
        match self.tri.left_face(a, b) {
            Some(f) => self.tri.interior_of([a, b, c]).0.contains(&f),
            None => false,
        }
    }

    /// Every state reachable in one `M_TR` step with its probability; the
    /// self-loop is left implicit.
    pub fn mtr_transitions(&self, o: &Orientation3) -> Vec<(Ratio<i128>, Orientation3)> {
        let p = Ratio::new(1, 2 * self.triangles.len() as i128);
        self.triangles
            .iter()
            .filter_map(|&tri| {
                let mut next = o.clone();
                self.reverse_triangle(&mut next, tri).then_some((p, next))
            })
            .collect()
    }

    /// The disagreeing edge of a non-directed face, as the directed arc
    /// that runs against the other two. `None` for directed faces and for
    /// faces with an edge on the outer triangle.
    pub fn disagreeing_edge(&self, o: &Orientation3, f: FaceId) -> Option<(VertexId, VertexId)> {
        let face = self.tri.face(f);
        if face.has_external_edge() {
            return None;
        }
        let v = face.vertices;
        let along: Vec<bool> = (0..3).map(|k| o.points(&self.tri, v[k], v[(k + 1) % 3])).collect();
        let forward = along.iter().filter(|&&x| x).count();
        match forward {
            1 => {
                let k = along.iter().position(|&x| x).expect("one forward edge");
                Some((v[k], v[(k + 1) % 3]))
            }
            2 => {
                let k = along.iter().position(|&x| !x).expect("one backward edge");
                Some((v[(k + 1) % 3], v[k]))
            }
            _ => None,
        }
    }

    fn is_directed_face(&self, o: &Orientation3, f: FaceId) -> bool {
        self.cyclic_sense(o, self.tri.face(f).vertices).is_some()
    }

    /// The tower beginning at `f`, if any.
    pub fn find_tower(&self, o: &Orientation3, f: FaceId) -> Option<Tower> {
        let mut faces = vec![f];
        while !self.is_directed_face(o, *faces.last().expect("nonempty")) {
            let cur = *faces.last().expect("nonempty");
            let (a, b) = self.disagreeing_edge(o, cur)?;
            let e = self.tri.edge_index(a, b).expect("disagreeing edges are internal");
            let (g, h) = self.tri.edge_faces(e);
            let next = if g == cur { h } else { g };
            if faces.contains(&next) {
                return None;
            }
            faces.push(next);
            if !self.is_tower_shape(&faces) {
                return None;
            }
        }
        let boundary = self.tower_boundary(o, &faces);
        Some(Tower { faces, boundary })
    }

    /// Checks the dual-path and four-faces-on-a-vertex conditions for the last
    /// face added to `faces`.
    fn is_tower_shape(&self, faces: &[FaceId]) -> bool {
        let k = faces.len();
        let last = faces[k - 1];
        let neighbors = self.tri.face_neighbors(last);
        if faces[..k.saturating_sub(2)].iter().any(|g| neighbors.contains(g)) {
            return false;
        }
        if k >= 4 {
            let window = &faces[k - 4..];
            let common = self.tri.face(window[0]).vertices.iter().any(|&v| {
                window.iter().all(|&g| self.tri.face(g).contains(v))
            });
            if common {
                return false;
            }
        }
        true
    }

    /// Edges of the union of the faces that lie on only one of them,
    /// directed as in `o`.
    fn tower_boundary(&self, o: &Orientation3, faces: &[FaceId]) -> Vec<(VertexId, VertexId)> {
        let mut count = std::collections::BTreeMap::new();
        for &f in faces {
            for e in self.tri.face(f).edges.iter().flatten() {
                *count.entry(*e).or_insert(0) += 1;
            }
        }
        count.into_iter().filter(|&(_, c)| c == 1).map(|(e, _)| o.arc(&self.tri, e)).collect()
    }

    /// Reverses `f_k`, then `f_(k-1)`, ..., then `f_1`.
    pub fn reverse_tower(&self, o: &Orientation3, tw: &Tower) -> Result<Orientation3, ChainError> {
        if tw.faces.is_empty() {
            return Err(ChainError::InvalidTower("no faces".into()));
        }
        match self.find_tower(o, tw.faces[0]) {
            Some(found) if found.faces == tw.faces => {}
            _ => return Err(ChainError::InvalidTower(format!("{:?} is not a tower here", tw.faces))),
        }
        let mut next = o.clone();
        for &f in tw.faces.iter().rev() {
            let tri = self.tri.face(f).vertices;
            if !self.reverse_triangle(&mut next, tri) {
                return Err(ChainError::InvalidTower(format!("face {f} is not directed when its turn comes")));
            }
        }
        Ok(next)
    }

    fn tower_acceptance(k: usize) -> Ratio<i128> {
        if k == 1 {
            Ratio::new(1, 2)
        } else {
            Ratio::new(1, 6 * k as i128)
        }
    }

    /// One `M_CR` step: a uniform face, then an acceptance draw with
    /// probability 1/2 (k = 1) or 1/(6k) (k >= 2).
    pub fn mcr_step<R: Rng + ?Sized>(&self, o: &mut Orientation3, rng: &mut R) -> Option<MoveRecord> {
        let f = rng.gen_range(0..self.tri.faces().len());
        let tower = self.find_tower(o, f);
        let denom = match &tower {
            Some(tw) => *Self::tower_acceptance(tw.len()).denom() as u64,
            None => 2,
        };
        let accept = rng.gen_range(0..denom) == 0;
        let tw = tower?;
        if !accept {
            return None;
        }
        *o = self.reverse_tower(o, &tw).expect("a tower found in this state is valid");
        // f_1 is reversed last, so it is the directed face afterwards.
        let first = self.tri.face(tw.faces[0]).vertices;
        let ccw_after = self.cyclic_sense(o, first).expect("first face ends up directed");
        Some(MoveRecord { step: 0, kind: MoveKind::Tower, items: tw.faces.clone(), ccw_after })
    }

    pub fn mcr_transitions(&self, o: &Orientation3) -> Vec<(Ratio<i128>, Orientation3)> {
        let nf = self.tri.faces().len() as i128;
        (0..self.tri.faces().len())
            .filter_map(|f| {
                let tw = self.find_tower(o, f)?;
                let next = self.reverse_tower(o, &tw).expect("valid tower");
                Some((Ratio::new(1, nf) * Self::tower_acceptance(tw.len()), next))
            })
            .collect()
    }
}

/// Runs `steps` steps of `M_TR` (`tower = false`) or `M_CR` and returns the
/// accepted moves, numbered from 1.
pub fn run_trajectory<R: Rng + ?Sized>(
    chain: &FixedChain,
    o: &mut Orientation3,
    steps: u64,
    tower: bool,
    rng: &mut R,
) -> Vec<MoveRecord> {
    let mut log = Vec::new();
    for step in 1..=steps {
        let rec = if tower { chain.mcr_step(o, rng) } else { chain.mtr_step(o, rng) };
        if let Some(mut r) = rec {
            r.step = step;
            log.push(r);
        }
    }
    log
}
