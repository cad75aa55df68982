//! Pairs of non-crossing Dyck paths, their bijection with the Schnyder
//! woods of all triangulations with `n` internal vertices, and the
//! lattice-path chain `M_DK`.
//!
//! Vertex labels produced by [`dyck_to_orientation`]: 0 = `s_red`,
//! 1 = `s_green`, 2 = `s_blue`, and the `i`-th vertex of the blue DFS order
//! gets id `2 + i`.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain_flip::FlipState;
use crate::orientation::{Color, Orientation3, SchnyderWood};
use crate::triangulation::{Triangulation, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyckError {
    #[error("step {0} is neither +1 nor -1")]
    BadStep(i8),
    #[error("path dips below zero or does not return to zero")]
    NotDyck,
    #[error("paths have different lengths")]
    LengthMismatch,
    #[error("top path crosses below bottom path at index {0}")]
    Crossing(usize),
    #[error("pair does not decode to a triangulation: {0}")]
    Decode(String),
    #[error("malformed key {0:?}")]
    BadKey(String),
}

/// A `+1/-1` string with nonnegative prefix sums and zero total.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct DyckPath(Vec<i8>);

impl DyckPath {
    pub fn new(steps: Vec<i8>) -> Result<Self, DyckError> {
        let mut h: i64 = 0;
        for &s in &steps {
            if s != 1 && s != -1 {
                return Err(DyckError::BadStep(s));
            }
            h += s as i64;
            if h < 0 {
                return Err(DyckError::NotDyck);
            }
        }
        if h != 0 {
            return Err(DyckError::NotDyck);
        }
        Ok(DyckPath(steps))
    }

    pub fn steps(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Heights `h_0 = 0, h_1, ..., h_2n`.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = vec![0i64];
        for &s in &self.0 {
            h.push(h.last().expect("nonempty") + s as i64);
        }
        h
    }

    fn as_text(&self) -> String {
        self.0.iter().map(|&s| if s == 1 { '+' } else { '-' }).collect()
    }

    fn from_text(s: &str) -> Result<Self, DyckError> {
        let steps = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(DyckError::BadKey(s.to_string())),
            })
            .collect::<Result<Vec<i8>, _>>()?;
        DyckPath::new(steps)
    }
}

impl TryFrom<Vec<i8>> for DyckPath {
    type Error = DyckError;
    fn try_from(v: Vec<i8>) -> Result<Self, DyckError> {
        DyckPath::new(v)
    }
}

impl From<DyckPath> for Vec<i8> {
    fn from(p: DyckPath) -> Vec<i8> {
        p.0
    }
}

/// Two Dyck paths of equal length, top dominating bottom pointwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct DyckPair {
    top: DyckPath,
    bottom: DyckPath,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    top: DyckPath,
    bottom: DyckPath,
}

impl TryFrom<RawPair> for DyckPair {
    type Error = DyckError;
    fn try_from(r: RawPair) -> Result<Self, DyckError> {
        DyckPair::new(r.top, r.bottom)
    }
}

impl From<DyckPair> for RawPair {
    fn from(p: DyckPair) -> RawPair {
        RawPair { top: p.top, bottom: p.bottom }
    }
}

impl DyckPair {
    pub fn new(top: DyckPath, bottom: DyckPath) -> Result<Self, DyckError> {
        if top.len() != bottom.len() {
            return Err(DyckError::LengthMismatch);
        }
        let (ht, hb) = (top.heights(), bottom.heights());
        if let Some(i) = (0..ht.len()).find(|&i| ht[i] < hb[i]) {
            return Err(DyckError::Crossing(i));
        }
        Ok(DyckPair { top, bottom })
    }

    pub fn from_steps(top: Vec<i8>, bottom: Vec<i8>) -> Result<Self, DyckError> {
        DyckPair::new(DyckPath::new(top)?, DyckPath::new(bottom)?)
    }

    pub fn top(&self) -> &DyckPath {
        &self.top
    }

    pub fn bottom(&self) -> &DyckPath {
        &self.bottom
    }

    /// Semilength `n`.
    pub fn n(&self) -> usize {
        self.top.len() / 2
    }

    /// `"<top>|<bottom>"` with `+` and `-` for the steps.
    pub fn key(&self) -> String {
        format!("{}|{}", self.top.as_text(), self.bottom.as_text())
    }

    pub fn from_key(key: &str) -> Result<Self, DyckError> {
        let (t, b) = key.split_once('|').ok_or_else(|| DyckError::BadKey(key.to_string()))?;
        DyckPair::new(DyckPath::from_text(t)?, DyckPath::from_text(b)?)
    }
}

impl fmt::Display for DyckPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Internal vertices in blue DFS order, with each vertex's blue parent.
///
/// The root `s_blue` visits its children clockwise starting just after
/// `s_green`; an internal vertex visits its children clockwise starting
/// from its own blue out-edge.
pub fn blue_dfs(s: &FlipState) -> (Vec<VertexId>, Vec<i8>) {
    let t = &s.tri;
    let [_, sg, sb] = t.external();
    let w = &s.wood;
    let blue_children_cw = |v: VertexId, start: VertexId| -> Vec<VertexId> {
        let rot = t.rotation(v);
        let k = rot.iter().position(|&u| u == start).expect("start is a neighbour");
        (1..=rot.len())
            .map(|i| rot[(k + rot.len() * 2 - i) % rot.len()])
            .filter(|&u| !t.is_external(u) && w.parent(t, u, Color::Blue) == Some(v))
            .collect()
    };
    let mut order = Vec::new();
    let mut path = Vec::new();
    // Iterative DFS: stack of (vertex, remaining children).
    let mut stack: Vec<(VertexId, std::vec::IntoIter<VertexId>)> =
        vec![(sb, blue_children_cw(sb, sg).into_iter())];
    while let Some((_, children)) = stack.last_mut() {
        match children.next() {
            Some(c) => {
                order.push(c);
                path.push(1);
                let parent = w.parent(t, c, Color::Blue).expect("internal vertex has a blue parent");
                stack.push((c, blue_children_cw(c, parent).into_iter()));
            }
            None => {
                stack.pop();
                if !stack.is_empty() {
                    path.push(-1);
                }
            }
        }
    }
    (order, path)
}

/// The pair of Dyck paths of a state.
pub fn orientation_to_dyck(s: &FlipState) -> DyckPair {
    let t = &s.tri;
    let w = &s.wood;
    let (order, bottom) = blue_dfs(s);
    let red_in = |v: VertexId| {
        t.rotation(v)
            .iter()
            .filter(|&&u| !t.is_external(u) && w.parent(t, u, Color::Red) == Some(v))
            .count()
    };
    let mut top = Vec::with_capacity(bottom.len());
    for &v in order.iter().skip(1) {
        top.push(1);
        top.extend(std::iter::repeat(-1).take(red_in(v)));
    }
    top.push(1);
    top.extend(std::iter::repeat(-1).take(red_in(t.external()[0])));
    DyckPair::from_steps(top, bottom).expect("a Schnyder wood maps to a non-crossing pair")
}

/// The unique state whose pair is `p`.
///
/// The blue tree is read off the bottom path and red in-degrees off the top
/// path. Vertices are then placed one at a time on a contour that starts as
/// `s_red, s_green`: a vertex covers its blue children, which sit between
/// its red parent (on the left) and its green parent (on the right).
/// `s_blue` finally covers the whole contour.
pub fn dyck_to_orientation(p: &DyckPair) -> Result<FlipState, DyckError> {
    let n = p.n();
    let (sr, sg, sb) = (0usize, 1usize, 2usize);
    let id = |i: usize| 2 + i; // i is 1-based

    // Blue parents from the bottom path.
    let mut blue_parent = vec![sb; n + 1];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 1;
    for &s in p.bottom.steps() {
        if s == 1 {
            if let Some(&top) = stack.last() {
                blue_parent[next] = id(top);
                children[top].push(next);
            }
            stack.push(next);
            next += 1;
        } else {
            stack.pop();
        }
    }

    // Red in-degrees from the top path: the downs after the i-th up-step
    // belong to v_(i+1), the last block to s_red.
    let mut red_in = vec![0usize; n + 2];
    let mut ups = 0;
    for &s in p.top.steps() {
        if s == 1 {
            ups += 1;
        } else {
            red_in[ups + 1] += 1;
        }
    }
    if red_in[1] != 0 {
        return Err(DyckError::Decode("v1 cannot have red children".into()));
    }
    // Vertices still lacking a red parent, listed top-down along the left
    // boundary of what the DFS has visited. Each vertex takes the topmost
    // ones that are not its blue ancestors as red children, then slips in
    // below its ancestors; s_red takes whatever is left.
    let is_ancestor = |a: usize, mut v: usize| {
        while blue_parent[v] != sb {
            v = blue_parent[v] - 2;
            if v == a {
                return true;
            }
        }
        false
    };
    let mut red_parent = vec![sr; n + 1];
    let mut waiting: Vec<usize> = Vec::new();
    for i in 1..=n {
        let ancestors = waiting.iter().take_while(|&&a| is_ancestor(a, i)).count();
        if waiting[ancestors..].iter().any(|&a| is_ancestor(a, i)) {
            return Err(DyckError::Decode(format!("ancestors of v{i} are not on top")));
        }
        if waiting.len() - ancestors < red_in[i] {
            return Err(DyckError::Decode(format!("v{i} has too few red children")));
        }
        for c in waiting.drain(ancestors..ancestors + red_in[i]) {
            red_parent[c] = id(i);
        }
        waiting.insert(ancestors, i);
    }
    if waiting.len() != red_in[n + 1] {
        return Err(DyckError::Decode("red in-degree of s_red does not match".into()));
    }

    // The contour runs from s_red to s_green and stays sorted by decreasing
    // DFS index. A vertex goes in once its blue children are on the contour
    // and its red parent sits immediately left of its slot; it then covers
    // the children, and the vertex right of them is its green parent.
    let rank = |x: VertexId| -> usize {
        match x {
            0 => n + 1,
            1 => 0,
            _ => x - 2,
        }
    };
    let mut path = vec![sr, sg];
    let mut placed = vec![false; n + 1];
    let mut faces: Vec<[VertexId; 3]> = Vec::new();
    let mut arcs: Vec<(VertexId, VertexId)> = Vec::new();
    for _ in 0..n {
        let slot = |i: usize, path: &[VertexId]| -> Option<(usize, usize)> {
            if placed[i] || !children[i].iter().all(|&c| placed[c]) {
                return None;
            }
            let block: Vec<VertexId> = children[i].iter().rev().map(|&c| id(c)).collect();
            let lpos = path.iter().rposition(|&x| rank(x) > i && !block.contains(&x))?;
            if path.len() < lpos + block.len() + 2 || path[lpos + 1..lpos + 1 + block.len()] != block[..] {
                return None;
            }
            (path[lpos] == red_parent[i]).then_some((lpos, lpos + block.len() + 1))
        };
        let (i, (lpos, rpos)) = (1..=n)
            .find_map(|i| slot(i, &path).map(|s| (i, s)))
            .ok_or_else(|| DyckError::Decode("no vertex can be inserted".into()))?;
        let v = id(i);
        for j in lpos..rpos {
            faces.push([path[j], path[j + 1], v]);
        }
        for &c in &children[i] {
            arcs.push((id(c), v));
        }
        arcs.push((v, path[lpos]));
        arcs.push((v, path[rpos]));
        path.splice(lpos + 1..rpos, std::iter::once(v));
        placed[i] = true;
    }
    for j in 0..path.len() - 1 {
        faces.push([path[j], path[j + 1], sb]);
    }
    for &v in &path[1..path.len() - 1] {
        if blue_parent[v - 2] != sb {
            return Err(DyckError::Decode(format!("v{} is left uncovered", v - 2)));
        }
        arcs.push((v, sb));
    }

    let tri = Triangulation::from_faces(n + 3, [sr, sg, sb], &faces).map_err(|e| DyckError::Decode(e.to_string()))?;
    let arcs = arcs.into_iter().filter(|&(a, b)| !(tri.is_external(a) && tri.is_external(b)));
    let o = Orientation3::from_directed_edges(&tri, arcs).map_err(|e| DyckError::Decode(e.to_string()))?;
    let wood = SchnyderWood::derive(&tri, &o).map_err(|e| DyckError::Decode(e.to_string()))?;
    Ok(FlipState { tri, wood })
}

/// All Dyck paths of semilength `n`, in lexicographic order of steps
/// (with -1 before +1).
pub fn enumerate_dyck_paths(n: usize) -> Vec<DyckPath> {
    fn go(n: usize, ups: usize, downs: usize, cur: &mut Vec<i8>, out: &mut Vec<DyckPath>) {
        if ups == n && downs == n {
            out.push(DyckPath(cur.clone()));
            return;
        }
        if downs < ups {
            cur.push(-1);
            go(n, ups, downs + 1, cur, out);
            cur.pop();
        }
        if ups < n {
            cur.push(1);
            go(n, ups + 1, downs, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// Every non-crossing pair of semilength `n`.
pub fn enumerate_dyck_pairs(n: usize) -> Vec<DyckPair> {
    let paths = enumerate_dyck_paths(n);
    let heights: Vec<Vec<i64>> = paths.iter().map(|p| p.heights()).collect();
    let mut out = Vec::new();
    for (i, top) in paths.iter().enumerate() {
        for (j, bottom) in paths.iter().enumerate() {
            if heights[i].iter().zip(&heights[j]).all(|(a, b)| a >= b) {
                out.push(DyckPair { top: top.clone(), bottom: bottom.clone() });
            }
        }
    }
    out
}

/// The Catalan number `C_k`.
pub fn catalan(k: u64) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// `C_(n+2) C_n - C_(n+1)^2`.
pub fn pair_count(n: u64) -> u128 {
    catalan(n + 2) * catalan(n) - catalan(n + 1) * catalan(n + 1)
}

/// A single proposal of `M_DK`: the point after step `i` (1-based, interior
/// points only) of the top (`on_top`) or bottom path.
fn flip_at(steps: &mut [i8], i: usize) {
    steps.swap(i - 1, i);
}

impl DyckPair {
    /// Result of choosing point `i` (1..2n-1) on the top or bottom path,
    /// before the coin; `None` when nothing can move.
    pub fn proposal(&self, on_top: bool, i: usize) -> Option<DyckPair> {
        let (a, b) = if on_top { (&self.top, &self.bottom) } else { (&self.bottom, &self.top) };
        let s = a.steps();
        if s[i - 1] == s[i] {
            return None;
        }
        let peak = s[i - 1] == 1;
        let ht = a.heights()[i];
        let other = b.heights()[i];
        let mut moved = s.to_vec();
        flip_at(&mut moved, i);
        let moved = DyckPath::new(moved).ok()?;
        let single = if on_top {
            DyckPair::new(moved.clone(), self.bottom.clone())
        } else {
            DyckPair::new(self.top.clone(), moved.clone())
        };
        if single.is_ok() {
            return single.ok();
        }
        // Blocked by the other path's extremum at the same point: move both.
        let blocked = other == ht && (on_top == peak);
        if !blocked {
            return None;
        }
        let mut both = b.steps().to_vec();
        flip_at(&mut both, i);
        let both = DyckPath::new(both).ok()?;
        let pair = if on_top { DyckPair::new(moved, both) } else { DyckPair::new(both, moved) };
        pair.ok()
    }

    /// One `M_DK` step: a uniform interior point of one of the two paths,
    /// then a fair coin.
    pub fn mdk_step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        let m = self.top.len() - 1;
        if m == 0 {
            return false;
        }
        let k = rng.gen_range(0..2 * m);
        let coin = rng.gen_bool(0.5);
        let (on_top, i) = (k < m, k % m + 1);
        match self.proposal(on_top, i) {
            Some(next) if coin => {
                *self = next;
                true
            }
            _ => false,
        }
    }

    pub fn mdk_transitions(&self) -> Vec<(Ratio<i128>, DyckPair)> {
        let m = self.top.len() - 1;
        if m == 0 {
            return Vec::new();
        }
        let p = Ratio::new(1, 4 * m as i128);
        let mut out: HashMap<DyckPair, Ratio<i128>> = HashMap::new();
        for on_top in [true, false] {
            for i in 1..=m {
                if let Some(next) = self.proposal(on_top, i) {
                    *out.entry(next).or_insert(Ratio::new(0, 1)) += p;
                }
            }
        }
        let mut v: Vec<_> = out.into_iter().map(|(s, p)| (p, s)).collect();
        v.sort_by(|a, b| a.1.cmp(&b.1));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::single_vertex;

    #[test]
    fn counts_match_the_formula() {
        for (n, want) in [(1, 1), (2, 3), (3, 14), (4, 84), (5, 594)] {
            assert_eq!(enumerate_dyck_pairs(n).len(), want);
            assert_eq!(pair_count(n as u64), want as u128);
        }
        assert_eq!(enumerate_dyck_paths(4).len() as u128, catalan(4));
    }

    #[test]
    fn single_vertex_pair() {
        let s = FlipState::initial(single_vertex()).unwrap();
        let p = orientation_to_dyck(&s);
        assert_eq!(p, DyckPair::from_steps(vec![1, -1], vec![1, -1]).unwrap());
        assert_eq!(dyck_to_orientation(&p).unwrap(), s);
    }

    #[test]
    fn round_trip_small() {
        for n in 1..=4 {
            for p in enumerate_dyck_pairs(n) {
                let s = dyck_to_orientation(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
                s.wood.validate(&s.tri).unwrap();
                assert_eq!(orientation_to_dyck(&s), p);
            }
        }
    }

    #[test]
    fn key_and_json() {
        let p = DyckPair::from_steps(vec![1, 1, -1, -1], vec![1, -1, 1, -1]).unwrap();
        assert_eq!(p.key(), "++--|+-+-");
        assert_eq!(DyckPair::from_key(&p.key()).unwrap(), p);
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"top":[1,1,-1,-1],"bottom":[1,-1,1,-1]}"#);
        assert_eq!(serde_json::from_str::<DyckPair>(&j).unwrap(), p);
        assert!(serde_json::from_str::<DyckPair>(r#"{"top":[1,-1,1,-1],"bottom":[1,1,-1,-1]}"#).is_err());
    }

    #[test]
    fn crossing_pair_is_rejected() {
        assert!(matches!(
            DyckPair::from_steps(vec![1, -1, 1, -1], vec![1, 1, -1, -1]),
            Err(DyckError::Crossing(2))
        ));
    }

    #[test]
    fn single_and_paired_moves() {
        // Top peak strictly above the bottom: single move.
        let p = DyckPair::from_steps(vec![1, 1, -1, -1], vec![1, -1, 1, -1]).unwrap();
        assert_eq!(p.proposal(true, 2).unwrap(), DyckPair::from_steps(vec![1, -1, 1, -1], vec![1, -1, 1, -1]).unwrap());
        // Coinciding peaks: both go down together.
        let q = DyckPair::from_steps(vec![1, 1, -1, -1, 1, -1], vec![1, 1, -1, -1, 1, -1]).unwrap();
        let both = q.proposal(true, 2).unwrap();
        assert_eq!(both, DyckPair::from_steps(vec![1, -1, 1, -1, 1, -1], vec![1, -1, 1, -1, 1, -1]).unwrap());
        // ... and the reverse is the paired valley move from the bottom.
        assert_eq!(both.proposal(false, 2).unwrap(), q);
    }
}
