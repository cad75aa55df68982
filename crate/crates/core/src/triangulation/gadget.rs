//! The slow-mixing family for the triangle-reversing chain.
//!
//! A hub `v0` sits next to the edge `s_blue`-`s_red` with a fan
//! `v1, ..., v(2t+1)` of neighbours, clockwise from `s_blue`. In every
//! 3-orientation exactly one fan edge leaves `v0` (its green edge); the
//! states split by the position of that edge. Below the pivot `v(t+1)` a
//! strip of `t - 2` vertices is fanned by `vt`; above it a second strip is
//! fanned by `s_red`. Orienting `v0 -> v(t+1)` forces every other edge.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{Triangulation, TriangulationError, VertexId};

/// Ids of the named vertices of a gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLabels {
    pub t: usize,
    /// `v[i]` for each label index that is used. Indices follow the
    /// construction: hub 0, fan 1..=2t+1, lower strip from 3t+1 upward,
    /// `v(3t)` joining the strips and the upper strip from 3t-1 downward.
    pub v: BTreeMap<usize, VertexId>,
    /// Hub vertex `v0`.
    pub hub: VertexId,
    /// Fan `v1..=v(2t+1)`, clockwise around the hub from `s_blue`.
    pub fan: Vec<VertexId>,
}

impl GadgetLabels {
    pub fn pivot(&self) -> VertexId {
        self.fan[self.t]
    }

    /// Position `j` (1-based) of `x` in the fan.
    pub fn fan_position(&self, x: VertexId) -> Option<usize> {
        self.fan.iter().position(|&f| f == x).map(|i| i + 1)
    }
}

/// Gives every face the orientation that agrees with the outer face
/// `(r, b, g)`, by propagation across shared edges.
fn orient(external: [VertexId; 3], tris: &[[VertexId; 3]]) -> Vec<[VertexId; 3]> {
    let mut by_edge: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
    let key = |a: VertexId, b: VertexId| (a.min(b), a.max(b));
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            by_edge.entry(key(t[k], t[(k + 1) % 3])).or_default().push(i);
        }
    }
    let mut out: Vec<Option<[VertexId; 3]>> = vec![None; tris.len()];
    let mut queue = VecDeque::new();
    // Required directed edge (x -> y) for face i: face becomes [x, y, z].
    let fix = |i: usize, x: VertexId, y: VertexId| {
        let z = tris[i].iter().copied().find(|&z| z != x && z != y).expect("triangle");
        [x, y, z]
    };
    let [r, _, b] = external;
    let first = by_edge[&key(r, b)][0];
    out[first] = Some(fix(first, b, r));
    queue.push_back(first);
    while let Some(i) = queue.pop_front() {
        let f = out[i].expect("queued faces are oriented");
        for k in 0..3 {
            let (x, y) = (f[k], f[(k + 1) % 3]);
            for &j in &by_edge[&key(x, y)] {
                if out[j].is_none() {
                    out[j] = Some(fix(j, y, x));
                    queue.push_back(j);
                }
            }
        }
    }
    out.into_iter().map(|f| f.expect("face list is connected")).collect()
}

/// Builds the gadget with parameter `t >= 2` and `4t - 2` internal vertices.
pub fn build_slow_gadget(t: usize) -> Result<(Triangulation, GadgetLabels), TriangulationError> {
    if t < 2 {
        return Err(TriangulationError::TooSmall(t));
    }
    let (sr, sg, sb) = (0, 1, 2);
    let hub = 3;
    let m = 2 * t + 1;
    let fan: Vec<VertexId> = (1..=m).map(|i| hub + i).collect();
    let v = |i: usize| fan[i - 1];
    let mut labels: BTreeMap<usize, VertexId> = (0..=m).map(|i| (i, hub + i)).collect();
    let mut next = hub + m + 1;

    let mut faces: Vec<[VertexId; 3]> = vec![[hub, sb, v(1)], [hub, v(m), sr], [hub, sr, sb]];
    faces.extend((1..m).map(|i| [hub, v(i), v(i + 1)]));

    if t == 2 {
        // No room for strips: every fan vertex is joined to s_green.
        faces.extend((1..m).map(|i| [v(i), v(i + 1), sg]));
        faces.extend([[v(1), sg, sb], [v(m), sr, sg]]);
    } else {
        let p = v(t + 1);
        let a = |i: usize| v(t + 1 + i);
        let c = |i: usize| v(t - i);
        let k = t - 2;
        let q = t - 3;
        let b: Vec<VertexId> = (0..k).map(|i| next + i).collect();
        next += k;
        let w = next;
        next += 1;
        let d: Vec<VertexId> = std::iter::once(w).chain((0..q).map(|i| next + i)).collect();
        next += q;
        for (i, &x) in b.iter().enumerate() {
            labels.insert(3 * t + 1 + i, x);
        }
        for (j, &x) in d.iter().enumerate() {
            labels.insert(3 * t - j, x);
        }

        // Lower strip between a_1..a_t and b_1..b_k, fanned by v_t.
        let bi = |i: usize| b[i - 1];
        faces.extend([[v(t), p, bi(1)], [p, a(1), bi(1)]]);
        for i in 1..k {
            faces.extend([[a(i), a(i + 1), bi(i)], [a(i + 1), bi(i + 1), bi(i)], [v(t), bi(i), bi(i + 1)]]);
        }
        faces.extend([[a(k), a(k + 1), bi(k)], [v(t), bi(k), w]]);
        faces.extend([[a(k + 1), w, bi(k)], [a(k + 1), a(t), w], [a(t), sr, w]]);

        // Upper strip between c_1..c_(t-1) and d_0 = w, d_1..d_q, fanned by s_red.
        faces.push([v(t), w, c(1)]);
        for j in 0..q {
            faces.extend([[c(j + 1), d[j], d[j + 1]], [c(j + 1), d[j + 1], c(j + 2)], [d[j], d[j + 1], sr]]);
        }
        let (cl, dl) = (c(q + 1), d[q]);
        faces.extend([[cl, dl, sg], [dl, sg, sr], [cl, v(1), sg], [v(1), sg, sb]]);
    }

    let external = [sr, sg, sb];
    let tri = Triangulation::from_faces(next, external, &orient(external, &faces))?;
    Ok((tri, GadgetLabels { t, v: labels, hub, fan }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for t in 2..=6 {
            let (g, l) = build_slow_gadget(t).unwrap();
            assert_eq!(g.n_internal(), 4 * t - 2, "t = {t}");
            assert_eq!(g.degree(l.pivot()), 4);
            assert_eq!(g.degree(l.hub), 2 * t + 3);
        }
        assert!(matches!(build_slow_gadget(1), Err(TriangulationError::TooSmall(1))));
    }

    #[test]
    fn fan_is_clockwise_from_s_blue() {
        let (g, l) = build_slow_gadget(3).unwrap();
        let [sr, _, sb] = g.external();
        // Counterclockwise around the hub: s_blue, s_red, then the fan backwards.
        assert_eq!(g.next_ccw(l.hub, sb), sr);
        assert_eq!(g.next_ccw(l.hub, l.fan[0]), sb);
        for i in 1..l.fan.len() {
            assert_eq!(g.next_ccw(l.hub, l.fan[i]), l.fan[i - 1]);
        }
    }
}
