use std::collections::VecDeque;

use super::OracleError;
use crate::chain_flip::FlipState;
use crate::orientation::{Orientation3, OrientationKey};
use crate::triangulation::Triangulation;

pub const MAX_BRUTE_FORCE_EDGES: usize = 26;

/// Every 3-orientation of `t`, found by walking all `2^m` direction
/// assignments in Gray-code order and tracking out-degrees incrementally.
/// Sorted by key.
pub fn brute_force_orientations(t: &Triangulation) -> Result<Vec<OrientationKey>, OracleError> {
    let edges = t.internal_edges();
    let m = edges.len();
    if m > MAX_BRUTE_FORCE_EDGES {
        return Err(OracleError::TooLarge { edges: m, limit: MAX_BRUTE_FORCE_EDGES });
    }
    let target: Vec<usize> = (0..t.n_vertices()).map(|v| if t.is_external(v) { 0 } else { 3 }).collect();
    // All bits clear: every edge points hi -> lo.
    let mut out = vec![0usize; t.n_vertices()];
    for &(_, hi) in edges {
        out[hi] += 1;
    }
    let mut good = (0..t.n_vertices()).filter(|&v| out[v] == target[v]).count();
    let mut mask: u64 = 0;
    let mut found = Vec::new();
    for step in 0u64..(1u64 << m) {
        if step > 0 {
            let e = step.trailing_zeros() as usize;
            let (lo, hi) = edges[e];
            let (from, to) = if mask >> e & 1 == 1 { (lo, hi) } else { (hi, lo) };
            mask ^= 1 << e;
            for (v, delta) in [(from, -1i64), (to, 1)] {
                good -= (out[v] == target[v]) as usize;
                out[v] = (out[v] as i64 + delta) as usize;
                good += (out[v] == target[v]) as usize;
            }
        }
        if good == t.n_vertices() {
            let key = if m == 0 { Vec::new() } else { vec![mask] };
            debug_assert!(Orientation3::from_key(t, &key).validate(t).is_ok());
            found.push(key);
        }
    }
    found.sort();
    Ok(found)
}

/// Canonical form of a state of `M_EF`: the rotation system relabelled by
/// breadth-first search from the dart `s_red -> s_green`, with every edge
/// marked out (0), in (1) or outer (2) as seen from the listing vertex.
pub type CanonicalCode = Vec<u32>;

pub fn canonical_code(s: &FlipState) -> CanonicalCode {
    let t = &s.tri;
    let o = s.orientation();
    let [sr, sg, _] = t.external();
    let n = t.n_vertices();
    let mut label = vec![u32::MAX; n];
    let mut reference = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    label[sr] = 0;
    reference[sr] = sg;
    let mut queue = VecDeque::from([sr]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        let rot = t.rotation(v);
        let start = rot.iter().position(|&u| u == reference[v]).expect("reference is a neighbour");
        for k in 0..rot.len() {
            let u = rot[(start + k) % rot.len()];
            if label[u] == u32::MAX {
                label[u] = order.len() as u32 + queue.len() as u32;
                reference[u] = v;
                queue.push_back(u);
            }
        }
    }
    let mut code = Vec::new();
    for &v in &order {
        let rot = t.rotation(v);
        let start = rot.iter().position(|&u| u == reference[v]).expect("reference is a neighbour");
        code.push(rot.len() as u32);
        for k in 0..rot.len() {
            let u = rot[(start + k) % rot.len()];
            let mark = if t.edge_index(v, u).is_none() {
                2
            } else if o.points(t, v, u) {
                0
            } else {
                1
            };
            code.extend([label[u], mark]);
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_fixed::FixedChain;
    use crate::oracle::{enumerate_reachable, TrChain, DEFAULT_CAP};
    use crate::triangulation::{hex_patch, single_vertex};

    #[test]
    fn single_vertex_has_one_orientation() {
        let keys = brute_force_orientations(&single_vertex()).unwrap();
        assert_eq!(keys.len(), 1);
    }

    #[test]
    fn brute_force_matches_bfs_on_hex_patch() {
        let fc = FixedChain::new(hex_patch());
        let o = Orientation3::initial(fc.triangulation()).unwrap();
        let space = enumerate_reachable(&TrChain(&fc), o, DEFAULT_CAP).unwrap();
        assert_eq!(space.keys(), brute_force_orientations(fc.triangulation()).unwrap().as_slice());
    }

    #[test]
    fn canonical_code_ignores_labels() {
        let s = FlipState::initial(hex_patch()).unwrap();
        let n = s.tri.n_vertices();
        // Reverse the internal labels, keep the outer three.
        let perm: Vec<usize> = (0..n).map(|v| if v < 3 { v } else { n + 2 - v }).collect();
        let rotation: Vec<Vec<usize>> = {
            let mut r = vec![Vec::new(); n];
            for v in 0..n {
                r[perm[v]] = s.tri.rotation(v).iter().map(|&u| perm[u]).collect();
            }
            r
        };
        let tri = Triangulation::from_rotation(s.tri.external(), rotation).unwrap();
        let arcs = s.orientation().directed_edges(&s.tri).into_iter().map(|(a, b)| (perm[a], perm[b]));
        let o = Orientation3::from_directed_edges(&tri, arcs).unwrap();
        let wood = crate::orientation::SchnyderWood::derive(&tri, &o).unwrap();
        let relabelled = FlipState::new(tri, wood).unwrap();
        assert_ne!(relabelled, s);
        assert_eq!(canonical_code(&relabelled), canonical_code(&s));
        let other = s.apply(s.enumerate_flip_moves()[0]).unwrap();
        assert_ne!(canonical_code(&other), canonical_code(&s));
    }
}
