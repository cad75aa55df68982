//! Small instance families used by the tests, the CLI and the acceptance suite.

use rand::Rng;

use super::{FaceId, Triangulation};

/// The smallest instance: one internal vertex joined to all three external
/// vertices (K4). Vertex ids: 0 = s_red, 1 = s_green, 2 = s_blue, 3 = centre.
pub fn single_vertex() -> Triangulation {
    Triangulation::from_faces(4, [0, 1, 2], &[[3, 1, 2], [3, 2, 0], [3, 0, 1]])
        .expect("K4 is a valid triangulation")
}

/// A hexagon of the triangular lattice (a centre and its six neighbours)
/// inside the outer triangle: 7 internal vertices, maximum internal degree 6,
/// 4-connected.
///
/// Ids: 0..3 external (red, green, blue), 3 = centre, 4..10 = ring r0..r5
/// counterclockwise starting at angle 0.
pub fn hex_patch() -> Triangulation {
    let c = 3;
    let r = |k: usize| 4 + (k % 6);
    let (sr, sg, sb) = (0, 1, 2);
    let mut faces: Vec<[usize; 3]> = (0..6).map(|k| [c, r(k), r(k + 1)]).collect();
    // Outside the hexagon the ring edge r_k r_{k+1} runs clockwise, so the
    // outer triangles are (r_{k+1}, r_k, s).
    faces.extend([
        [r(1), r(0), sb],
        [r(2), r(1), sb],
        [r(0), sg, sb],
        [r(3), r(2), sr],
        [r(4), r(3), sr],
        [r(2), sb, sr],
        [r(5), r(4), sg],
        [r(0), r(5), sg],
        [r(4), sr, sg],
    ]);
    Triangulation::from_faces(10, [sr, sg, sb], &faces).expect("hex patch is a valid triangulation")
}

/// Inserts a new vertex into finite face `face`, joined to its three corners.
/// The face becomes a separating triangle.
pub fn stacked(base: &Triangulation, face: FaceId) -> Triangulation {
    let nv = base.n_vertices();
    let target = base.face(face).vertices;
    let mut faces: Vec<[usize; 3]> =
        base.faces().iter().filter(|f| f.id != face).map(|f| f.vertices).collect();
    let [a, b, c] = target;
    faces.extend([[nv, a, b], [nv, b, c], [nv, c, a]]);
    Triangulation::from_faces(nv + 1, base.external(), &faces).expect("stacking keeps a triangulation")
}

/// Applies up to `flips` random diagonal flips (invalid proposals are skipped).
pub fn flip_random_edges<R: Rng + ?Sized>(base: &Triangulation, flips: usize, rng: &mut R) -> Triangulation {
    let mut t = base.clone();
    for _ in 0..flips {
        let e = rng.gen_range(0..t.n_internal_edges());
        let (x, y) = t.internal_edges()[e];
        if let Ok(next) = t.flipped(x, y) {
            t = next;
        }
    }
    t
}

/// A random triangulation with `n` internal vertices: random stacking from
/// K4 followed by `4n` random flips.
pub fn random_triangulation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Triangulation {
    assert!(n >= 1, "need at least one internal vertex");
    let mut t = single_vertex();
    while t.n_internal() < n {
        let f = rng.gen_range(0..t.faces().len());
        t = stacked(&t, f);
    }
    flip_random_edges(&t, 4 * n, rng)
}
