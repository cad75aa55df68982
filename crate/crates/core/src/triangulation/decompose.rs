use std::collections::{BTreeSet, HashMap};

use super::{FaceId, Triangulation, VertexId};

/// One 4-connected piece of a triangulation cut along its separating
/// triangles.
#[derive(Debug, Clone)]
pub struct Piece {
    /// Bounding triangle in the original ids (the outer triangle for the root piece).
    pub boundary: [VertexId; 3],
    /// Finite faces of the original triangulation owned by this piece: inside
    /// `boundary` and not inside any separating triangle nested in it.
    pub faces: Vec<FaceId>,
    /// Directly nested separating triangles; each is a single face of `triangulation`.
    pub holes: Vec<[VertexId; 3]>,
    /// The piece as a triangulation of its own, holes filled by single faces.
    pub triangulation: Triangulation,
    /// `vertex_map[i]` is the original id of piece vertex `i`.
    pub vertex_map: Vec<VertexId>,
}

struct Container {
    boundary: [VertexId; 3],
    interior: BTreeSet<FaceId>,
}

impl Triangulation {
    /// Splits the triangulation along its non-facial triangles. The root
    /// piece (bounded by the outer triangle) comes first; the rest follow in
    /// the order of their bounding triangles.
    pub fn decompose_by_separating_triangles(&self) -> Vec<Piece> {
        let mut containers = vec![Container {
            boundary: self.external(),
            interior: (0..self.faces().len()).collect(),
        }];
        for tri in self.find_triangles().into_iter().filter(|t| !t.is_facial()) {
            let (inside, _) = self.interior_of(tri.vertices);
            containers.push(Container { boundary: tri.vertices, interior: inside.into_iter().collect() });
        }

        // Interiors are nested or disjoint, so the smallest container holding
        // a face is its innermost one.
        let owner: Vec<usize> = (0..self.faces().len())
            .map(|f| {
                (0..containers.len())
                    .filter(|&c| containers[c].interior.contains(&f))
                    .min_by_key(|&c| containers[c].interior.len())
                    .expect("the root container holds every face")
            })
            .collect();
        let parent: Vec<Option<usize>> = (0..containers.len())
            .map(|c| {
                (0..containers.len())
                    .filter(|&p| {
                        p != c
                            && containers[p].interior.len() > containers[c].interior.len()
                            && containers[c].interior.is_subset(&containers[p].interior)
                    })
                    .min_by_key(|&p| containers[p].interior.len())
            })
            .collect();

        (0..containers.len())
            .map(|c| {
                let faces: Vec<FaceId> = (0..self.faces().len()).filter(|&f| owner[f] == c).collect();
                let holes: Vec<[VertexId; 3]> = (0..containers.len())
                    .filter(|&h| parent[h] == Some(c))
                    .map(|h| self.ccw_triangle(containers[h].boundary, &containers[h].interior))
                    .collect();
                let boundary = if c == 0 {
                    self.external()
                } else {
                    let ccw = self.ccw_triangle(containers[c].boundary, &containers[c].interior);
                    let k = (0..3).min_by_key(|&i| ccw[i]).unwrap_or(0);
                    [ccw[k], ccw[(k + 1) % 3], ccw[(k + 2) % 3]]
                };

                let mut vertex_set: BTreeSet<VertexId> = boundary.into_iter().collect();
                for &f in &faces {
                    vertex_set.extend(self.face(f).vertices);
                }
                for h in &holes {
                    vertex_set.extend(h.iter().copied());
                }
                let vertex_map: Vec<VertexId> = vertex_set.into_iter().collect();
                let local: HashMap<VertexId, usize> =
                    vertex_map.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                let relabel = |tri: [VertexId; 3]| tri.map(|v| local[&v]);
                let piece_faces: Vec<[VertexId; 3]> = faces
                    .iter()
                    .map(|&f| relabel(self.face(f).vertices))
                    .chain(holes.iter().map(|&h| relabel(h)))
                    .collect();
                let triangulation = Triangulation::from_faces(vertex_map.len(), relabel(boundary), &piece_faces)
                    .expect("a piece of a triangulation is a triangulation");
                Piece { boundary, faces, holes, triangulation, vertex_map }
            })
            .collect()
    }

    /// Orders `tri` so that `interior` lies on its left, i.e. counterclockwise.
    fn ccw_triangle(&self, tri: [VertexId; 3], interior: &BTreeSet<FaceId>) -> [VertexId; 3] {
        let [a, b, c] = tri;
        match self.left_face(a, b) {
            Some(f) if interior.contains(&f) => [a, b, c],
            _ => [b, a, c],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{hex_patch, single_vertex, stacked};
    use super::*;

    /// Brute-force innermost containment: a face belongs to the separating
    /// triangle whose interior contains it and has the fewest faces.
    fn brute_owner(t: &Triangulation, f: FaceId) -> [VertexId; 3] {
        let mut best = (usize::MAX, t.external());
        for tri in t.find_triangles().iter().filter(|x| !x.is_facial()) {
            let (inside, _) = t.interior_of(tri.vertices);
            if inside.contains(&f) && inside.len() < best.0 {
                best = (inside.len(), tri.vertices);
            }
        }
        best.1
    }

    #[test]
    fn four_connected_is_a_single_piece() {
        let t = hex_patch();
        let pieces = t.decompose_by_separating_triangles();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].triangulation, t);
        assert!(pieces[0].holes.is_empty());
    }

    #[test]
    fn one_separating_triangle_gives_two_pieces() {
        let t = stacked(&hex_patch(), 4);
        let pieces = t.decompose_by_separating_triangles();
        assert_eq!(pieces.len(), 2);
        let own: usize = pieces.iter().map(|p| p.faces.len()).sum();
        assert_eq!(own, 2 * t.n_internal() + 1);
        let n: usize = pieces.iter().map(|p| p.triangulation.n_internal()).sum();
        assert_eq!(n, t.n_internal());
        for p in &pieces {
            assert!(p.triangulation.is_four_connected());
        }
    }

    #[test]
    fn nested_triangles_respect_innermost_containment() {
        // K4 stacked twice into nested faces: three nested triangles.
        let mut t = single_vertex();
        t = stacked(&t, 0);
        let inner_face = t.faces().iter().find(|f| f.contains(4)).unwrap().id;
        t = stacked(&t, inner_face);
        let t = stacked(&t, 0);
        let pieces = t.decompose_by_separating_triangles();
        for p in &pieces {
            for &f in &p.faces {
                let mut expect = brute_owner(&t, f);
                expect.sort_unstable();
                let mut got = p.boundary;
                got.sort_unstable();
                if p.boundary == t.external() {
                    let mut ext = t.external();
                    ext.sort_unstable();
                    assert_eq!(expect, ext);
                } else {
                    assert_eq!(expect, got);
                }
            }
        }
        let own: usize = pieces.iter().map(|p| p.faces.len()).sum();
        assert_eq!(own, 2 * t.n_internal() + 1);
        let reinflated: usize = pieces.iter().map(|p| 2 * p.triangulation.n_internal() + 1).sum();
        let holes: usize = pieces.iter().map(|p| p.holes.len()).sum();
        assert_eq!(reinflated - holes, 2 * t.n_internal() + 1);
        for p in &pieces {
            assert!(p.triangulation.is_four_connected());
        }
    }
}
