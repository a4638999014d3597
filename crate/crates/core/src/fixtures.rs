//! Small named triangulations used by the tests, the CLI and the demo.

use crate::complex::SimplicialComplex;
use crate::surfaces;

/// Boundary of the octahedron: vertices `0/1 = ±x`, `2/3 = ±y`, `4/5 = ±z`.
pub fn octahedron() -> SimplicialComplex {
    let mut tris = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                tris.push([a, b, c]);
            }
        }
    }
    SimplicialComplex::new(6, tris).unwrap()
}

/// Boundary of the tetrahedron.
pub fn tetrahedron() -> SimplicialComplex {
    SimplicialComplex::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
}

/// The 7-vertex (Möbius) torus.
pub fn torus7() -> SimplicialComplex {
    let tris = (0..7).flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]]);
    SimplicialComplex::new(7, tris).unwrap()
}

/// The 6-vertex projective plane (hemi-icosahedron).
pub fn projective_plane6() -> SimplicialComplex {
    let tris = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    SimplicialComplex::new(6, tris).unwrap()
}

pub fn klein_bottle() -> SimplicialComplex {
    surfaces::closed_surface(false, 2).unwrap()
}

pub fn genus2() -> SimplicialComplex {
    surfaces::closed_surface(true, 2).unwrap()
}

/// Vertex index of leg `leg` at circle position `i` in [`tripod_bundle`].
pub fn tripod_leg_vertex(n: usize, leg: usize, i: usize) -> usize {
    n + leg * n + i
}

/// Mapping torus of a permutation of the three legs of the tripod, over a circle of
/// `n >= 3` vertices. Vertices `0..n` form the central circle; leg `a` at position `i`
/// is [`tripod_leg_vertex`]`(n, a, i)`. Crossing from position `n-1` back to `0`
/// sends leg `a` to leg `perm[a]`.
pub fn tripod_bundle(n: usize, perm: [usize; 3]) -> SimplicialComplex {
    assert!(n >= 3, "circle needs at least 3 vertices");
    let mut tris = Vec::with_capacity(6 * n);
    for i in 0..n {
        let i1 = (i + 1) % n;
        for a in 0..3 {
            let here = tripod_leg_vertex(n, a, i);
            let next = if i + 1 == n {
                tripod_leg_vertex(n, perm[a], 0)
            } else {
                tripod_leg_vertex(n, a, i + 1)
            };
            tris.push([i, i1, here]);
            tris.push([i1, next, here]);
        }
    }
    SimplicialComplex::new(4 * n, tris).unwrap()
}

/// The leg-end circles of [`tripod_bundle`], one per cycle of `perm`, each as an
/// ordered vertex loop.
pub fn tripod_leg_circles(n: usize, perm: [usize; 3]) -> Vec<Vec<usize>> {
    let mut seen = [false; 3];
    let mut out = Vec::new();
    for start in 0..3 {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut leg = start;
        while !seen[leg] {
            seen[leg] = true;
            cycle.extend((0..n).map(|i| tripod_leg_vertex(n, leg, i)));
            leg = perm[leg];
        }
        out.push(cycle);
    }
    out
}

/// [`tripod_bundle`] with every leg-end circle capped by a cone.
pub fn capped_tripod_bundle(n: usize, perm: [usize; 3]) -> SimplicialComplex {
    let base = tripod_bundle(n, perm);
    surfaces::cap_cycles(&base, &tripod_leg_circles(n, perm))
}

/// The trivial tripod bundle with legs 1 and 2 capped and leg 0 left as a collar circle.
pub fn tripod_bundle_capped_except_leg0(n: usize) -> SimplicialComplex {
    let base = tripod_bundle(n, [0, 1, 2]);
    let circles = tripod_leg_circles(n, [0, 1, 2]);
    surfaces::cap_cycles(&base, &circles[1..])
}

/// Annulus with inner ring `0..n` and outer ring `n..2n`.
pub fn annulus(n: usize) -> SimplicialComplex {
    assert!(n >= 3);
    let tris = (0..n).flat_map(|i| {
        let i1 = (i + 1) % n;
        [[i, i1, n + i], [i1, n + i1, n + i]]
    });
    SimplicialComplex::new(2 * n, tris).unwrap()
}

/// Annulus of `rings.len()` concentric rings of `n` vertices, vertex `(r, i)` at `r * n + i`.
/// Band `r` (between rings `r` and `r + 1`) uses ring `r + rings[r]` as the side with
/// two vertices in each triangle of the pair at position `i`.
fn ring_annulus(n: usize, bases: &[usize]) -> SimplicialComplex {
    let rings = bases.len() + 1;
    let mut tris = Vec::new();
    for (r, &b) in bases.iter().enumerate() {
        let (p, q) = if b == 0 { (r, r + 1) } else { (r + 1, r) };
        for i in 0..n {
            let i1 = (i + 1) % n;
            tris.push([p * n + i, p * n + i1, q * n + i]);
            tris.push([p * n + i1, q * n + i1, q * n + i]);
        }
    }
    SimplicialComplex::new(rings * n, tris).unwrap()
}

/// Target for [`tripod_projection`]: five rings `frame, Ra, Rc, Rb, frame`. The two
/// frame rings are the boundary.
pub fn tripod_projection_target(n: usize) -> SimplicialComplex {
    ring_annulus(n, &[0, 1, 0, 0])
}

/// Vertical projection of [`tripod_bundle`] onto [`tripod_projection_target`]: the
/// central circle goes to ring `Rc`, leg 0 to ring `Rb`, legs 1 and 2 to ring `Ra`.
pub fn tripod_projection(n: usize) -> Vec<usize> {
    let ring = |r: usize, i: usize| r * n + i;
    let mut a = vec![0; 4 * n];
    for i in 0..n {
        a[i] = ring(2, i);
        a[tripod_leg_vertex(n, 0, i)] = ring(3, i);
        a[tripod_leg_vertex(n, 1, i)] = ring(1, i);
        a[tripod_leg_vertex(n, 2, i)] = ring(1, i);
    }
    a
}

/// Four triangles sharing the edge `{0, 1}`.
pub fn edge_in_four_triangles() -> SimplicialComplex {
    SimplicialComplex::new(6, [[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 1, 5]]).unwrap()
}

/// Triangulated `w x h` grid of unit squares (a disk), vertex `(x, y)` at `y * (w + 1) + x`.
pub fn grid_disk(w: usize, h: usize) -> SimplicialComplex {
    let idx = |x: usize, y: usize| y * (w + 1) + x;
    let mut tris = Vec::new();
    for y in 0..h {
        for x in 0..w {
            tris.push([idx(x, y), idx(x + 1, y), idx(x + 1, y + 1)]);
            tris.push([idx(x, y), idx(x + 1, y + 1), idx(x, y + 1)]);
        }
    }
    SimplicialComplex::new((w + 1) * (h + 1), tris).unwrap()
}

/// Triangulated `w x h` torus grid (`w, h >= 3`), vertex `(x, y)` at `y * w + x`.
pub fn grid_torus(w: usize, h: usize) -> SimplicialComplex {
    assert!(w >= 3 && h >= 3);
    let idx = |x: usize, y: usize| (y % h) * w + (x % w);
    let mut tris = Vec::new();
    for y in 0..h {
        for x in 0..w {
            tris.push([idx(x, y), idx(x + 1, y), idx(x + 1, y + 1)]);
            tris.push([idx(x, y), idx(x + 1, y + 1), idx(x, y + 1)]);
        }
    }
    SimplicialComplex::new(w * h, tris).unwrap()
}

/// Heights on [`grid_torus`] for a torus standing upright: the big circle runs along
/// `y`, the tube along `x`. Values are perturbed by `index * 1e-6` so they are distinct.
pub fn upright_torus_heights(w: usize, h: usize) -> Vec<f64> {
    let (big, small) = (2.0_f64, 1.0_f64);
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let theta = std::f64::consts::TAU * y as f64 / h as f64;
            let phi = std::f64::consts::TAU * x as f64 / w as f64;
            let v = y * w + x;
            out[v] = (big + small * phi.cos()) * theta.sin() + 1e-6 * v as f64;
        }
    }
    out
}

/// Heights on the octahedron given by the `z` coordinate, perturbed to be distinct.
pub fn octahedron_heights() -> Vec<f64> {
    vec![0.0, 0.1, 0.2, 0.3, 1.0, -1.0]
}

/// A height function on [`torus7`] with exactly one minimum, two saddles and one maximum.
pub fn torus7_heights() -> Vec<f64> {
    TORUS7_PERFECT.iter().map(|&r| r as f64).collect()
}

// First permutation in lexicographic order whose PL function on the 7-vertex torus
// has exactly four critical vertices (found by exhaustive search in the reeb tests).
const TORUS7_PERFECT: [u32; 7] = [0, 1, 2, 3, 4, 5, 6];
