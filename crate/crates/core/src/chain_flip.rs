//! The edge-flip chain `M_EF` on all 3-orientations of all triangulations
//! with `n` internal vertices.

use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::orientation::{Color, Orientation3, OrientationError, OrientationJson, SchnyderWood};
use crate::triangulation::{Triangulation, TriangulationError, TriangulationJson, VertexId};

/// A triangulation together with a Schnyder wood on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipState {
    pub tri: Triangulation,
    pub wood: SchnyderWood,
}

/// Replace the path `z -> x -> y` by `x -> z -> w`, where `x y` is the
/// flipped diagonal and `z`, `w` are the two apexes of its faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FlipMove {
    pub x: VertexId,
    pub y: VertexId,
    pub z: VertexId,
    pub w: VertexId,
}

#[derive(Debug, thiserror::Error)]
pub enum FlipError {
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Orientation(#[from] OrientationError),
    #[error("{0:?} is not a valid move in this state")]
    InvalidMove(FlipMove),
}

impl FlipState {
    pub fn new(tri: Triangulation, wood: SchnyderWood) -> Result<Self, FlipError> {
        wood.validate(&tri)?;
        Ok(FlipState { tri, wood })
    }

    /// The triangulation with its deterministic initial orientation.
    pub fn initial(tri: Triangulation) -> Result<Self, FlipError> {
        let o = Orientation3::initial(&tri)?;
        let wood = SchnyderWood::derive(&tri, &o)?;
        Ok(FlipState { tri, wood })
    }

    pub fn n(&self) -> usize {
        self.tri.n_internal()
    }

    pub fn orientation(&self) -> &Orientation3 {
        &self.wood.orientation
    }

    fn points(&self, a: VertexId, b: VertexId) -> bool {
        self.wood.orientation.points(&self.tri, a, b)
    }

    /// The four boundary edges of the quadrilateral around internal edge
    /// `e = (x, y)`, in the order `x-p, p-y, y-q, q-x`, each written as
    /// `(endpoint of e, apex)`.
    pub fn candidates(&self, e: usize) -> [(VertexId, VertexId); 4] {
        let (x, y) = self.tri.internal_edges()[e];
        let p = self.tri.prev_ccw(y, x);
        let q = self.tri.prev_ccw(x, y);
        [(x, p), (y, p), (y, q), (x, q)]
    }

    /// The move defined by internal edge `e` and candidate `k`, if valid.
    pub fn proposal(&self, e: usize, k: usize) -> Option<FlipMove> {
        let (a, b) = self.tri.internal_edges()[e];
        let (x, z) = self.candidates(e)[k];
        let y = if x == a { b } else { a };
        let apexes = [self.candidates(e)[0].1, self.candidates(e)[2].1];
        let w = if z == apexes[0] { apexes[1] } else { apexes[0] };
        let valid = !self.tri.is_external(z)
            && self.points(z, x)
            && self.points(x, y)
            && !self.tri.adjacent(z, w);
        valid.then_some(FlipMove { x, y, z, w })
    }

    /// Every valid move, in (edge, candidate) order.
    pub fn enumerate_flip_moves(&self) -> Vec<FlipMove> {
        (0..self.tri.n_internal_edges())
            .flat_map(|e| (0..4).filter_map(move |k| self.proposal(e, k)))
            .collect()
    }

    pub fn apply(&self, m: FlipMove) -> Result<FlipState, FlipError> {
        let FlipMove { x, y, z, w } = m;
        if !(self.points(z, x) && self.points(x, y)) {
            return Err(FlipError::InvalidMove(m));
        }
        let tri = self.tri.flipped(x, y)?;
        if !tri.adjacent(z, w) {
            return Err(FlipError::InvalidMove(m));
        }
        let arcs = self
            .wood
            .orientation
            .directed_edges(&self.tri)
            .into_iter()
            .filter(|&arc| arc != (x, y))
            .map(|arc| if arc == (z, x) { (x, z) } else { arc })
            .chain(std::iter::once((z, w)));
        let o = Orientation3::from_directed_edges(&tri, arcs)?;
        let wood = SchnyderWood::derive(&tri, &o)?;
        Ok(FlipState { tri, wood })
    }

    /// Colours of `z -> x` and `x -> y` before the move: the two colours the
    /// move exchanges.
    pub fn swap_colors(&self, m: FlipMove) -> (Color, Color) {
        let c1 = self.wood.color(&self.tri, m.z, m.x).expect("edge zx exists");
        let c2 = self.wood.color(&self.tri, m.x, m.y).expect("edge xy exists");
        (c1, c2)
    }

    /// One `M_EF` step: a uniform internal edge, a uniform candidate among
    /// the four, then a fair coin.
    pub fn mef_step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<FlipMove> {
        let e = rng.gen_range(0..self.tri.n_internal_edges());
        let k = rng.gen_range(0..4);
        let coin = rng.gen_bool(0.5);
        let m = self.proposal(e, k)?;
        if !coin {
            return None;
        }
        *self = self.apply(m).expect("proposed moves are valid");
        Some(m)
    }

    /// All one-step successors with their probabilities (self-loop implicit).
    pub fn mef_transitions(&self) -> Vec<(Ratio<i128>, FlipState)> {
        let p = Ratio::new(1, 8 * self.tri.n_internal_edges() as i128);
        self.enumerate_flip_moves()
            .into_iter()
            .map(|m| (p, self.apply(m).expect("enumerated moves are valid")))
            .collect()
    }

    pub fn to_json(&self) -> FlipStateJson {
        FlipStateJson { triangulation: self.tri.to_json(), orientation: self.wood.to_json(&self.tri, None) }
    }

    pub fn from_json(j: &FlipStateJson) -> Result<FlipState, FlipError> {
        let tri = j.triangulation.build()?;
        let wood = SchnyderWood::from_json(&tri, &j.orientation)?;
        Ok(FlipState { tri, wood })
    }
}

/// Triangulation JSON and orientation JSON side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipStateJson {
    pub triangulation: TriangulationJson,
    pub orientation: OrientationJson,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::{hex_patch, random_triangulation, single_vertex};

    #[test]
    fn single_vertex_has_no_moves() {
        let s = FlipState::initial(single_vertex()).unwrap();
        assert!(s.enumerate_flip_moves().is_empty());
    }

    #[test]
    fn moves_preserve_outdegrees_and_are_undone_by_the_mirror_move() {
        let mut rng = crate::rng::stream(5, 0);
        for n in 2..=7 {
            let s = FlipState::initial(random_triangulation(n, &mut rng)).unwrap();
            for m in s.enumerate_flip_moves() {
                let next = s.apply(m).unwrap();
                next.wood.validate(&next.tri).unwrap();
                assert_eq!(next.tri.internal_edges().len(), s.tri.internal_edges().len());
                assert!(!next.tri.adjacent(m.x, m.y));
                let back = FlipMove { x: m.z, y: m.w, z: m.x, w: m.y };
                assert!(next.enumerate_flip_moves().contains(&back));
                assert_eq!(next.apply(back).unwrap(), s);
            }
        }
    }

    #[test]
    fn a_move_swaps_two_distinct_colours() {
        let s = FlipState::initial(hex_patch()).unwrap();
        let moves = s.enumerate_flip_moves();
        assert!(!moves.is_empty());
        for m in moves {
            let (a, b) = s.swap_colors(m);
            assert_ne!(a, b);
        }
    }

    #[test]
    fn step_matches_transitions() {
        let mut rng = crate::rng::stream(8, 1);
        let mut s = FlipState::initial(hex_patch()).unwrap();
        for _ in 0..300 {
            let before = s.clone();
            if s.mef_step(&mut rng).is_some() {
                assert!(before.mef_transitions().iter().any(|(_, t)| *t == s));
            } else {
                assert_eq!(s, before);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let s = FlipState::initial(hex_patch()).unwrap();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back: FlipStateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(FlipState::from_json(&back).unwrap(), s);
    }
}
