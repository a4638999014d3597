//! Triangulated compact surfaces: closed models, surfaces with boundary, capping,
//! and the reference homology of closed surfaces.

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::homology::{CoefficientRing, GroupSummary, HomologySummary};
use crate::complex::{SimplicialComplex, Triangle};
use crate::fixtures;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("invalid surface parameters: {0}")]
    InvalidParameters(String),
}

/// A compact connected surface with its boundary loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactSurfaceModel {
    pub orientable: bool,
    /// Genus if orientable, crosscap count otherwise.
    pub genus: usize,
    pub boundary_count: usize,
    pub complex: SimplicialComplex,
    /// Ordered vertex loops, one per boundary circle.
    pub boundary_cycles: Vec<Vec<usize>>,
}

impl CompactSurfaceModel {
    pub fn expected_euler_characteristic(&self) -> i64 {
        expected_euler(self.orientable, self.genus, self.boundary_count)
    }
}

fn expected_euler(orientable: bool, genus: usize, boundaries: usize) -> i64 {
    let g = genus as i64;
    let b = boundaries as i64;
    if orientable {
        2 - 2 * g - b
    } else {
        2 - g - b
    }
}

fn check_params(orientable: bool, genus: usize) -> Result<(), SurfaceError> {
    if !orientable && genus == 0 {
        return Err(SurfaceError::InvalidParameters(
            "a non-orientable surface needs at least one crosscap".into(),
        ));
    }
    Ok(())
}

/// Connected sum: the last triangle of `a` and the first triangle of `b` are
/// removed and their vertices identified in order.
pub fn connected_sum(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let ta = *a.triangles().last().expect("non-empty summand");
    let tb = b.triangles()[0];
    let mut map = HashMap::new();
    for i in 0..3 {
        map.insert(tb[i], ta[i]);
    }
    let mut next = a.vertex_count();
    let mut relabel = vec![0; b.vertex_count()];
    for (v, slot) in relabel.iter_mut().enumerate() {
        *slot = match map.get(&v) {
            Some(&w) => w,
            None => {
                next += 1;
                next - 1
            }
        };
    }
    let tris = a.triangles()[..a.triangles().len() - 1]
        .iter()
        .copied()
        .chain(b.triangles()[1..].iter().map(|t| t.map(|v| relabel[v])));
    SimplicialComplex::new(next, tris).expect("connected sum of valid surfaces")
}

/// Closed surface: orientable of genus `g`, or non-orientable with `g` crosscaps.
pub fn closed_surface(orientable: bool, genus: usize) -> Result<SimplicialComplex, SurfaceError> {
    check_params(orientable, genus)?;
    if orientable && genus == 0 {
        return Ok(fixtures::octahedron());
    }
    let piece = if orientable {
        fixtures::torus7()
    } else {
        fixtures::projective_plane6()
    };
    let mut out = piece.clone();
    for _ in 1..genus {
        out = connected_sum(&out, &piece);
    }
    Ok(out)
}

/// Greedy choice of `count` pairwise vertex-disjoint triangles in canonical order,
/// skipping any triangle touching `forbidden`.
pub fn disjoint_triangles(
    k: &SimplicialComplex,
    count: usize,
    forbidden: impl Fn(usize) -> bool,
) -> Option<Vec<Triangle>> {
    let mut used = vec![false; k.vertex_count()];
    let mut out = Vec::new();
    for t in k.triangles() {
        if out.len() == count {
            break;
        }
        if t.iter().any(|&v| used[v] || forbidden(v)) {
            continue;
        }
        for &v in t {
            used[v] = true;
        }
        out.push(*t);
    }
    (out.len() == count).then_some(out)
}

/// Removes the given triangles and drops vertices left isolated, renumbering the
/// rest in increasing order. Returns the complex and the old→new vertex map.
pub fn remove_triangles(
    k: &SimplicialComplex,
    remove: &[Triangle],
) -> (SimplicialComplex, Vec<Option<usize>>) {
    let keep: Vec<Triangle> = k
        .triangles()
        .iter()
        .filter(|t| !remove.contains(t))
        .copied()
        .collect();
    let mut used = vec![false; k.vertex_count()];
    for t in &keep {
        for &v in t {
            used[v] = true;
        }
    }
    let mut map = vec![None; k.vertex_count()];
    let mut n = 0;
    for v in 0..k.vertex_count() {
        if used[v] {
            map[v] = Some(n);
            n += 1;
        }
    }
    let tris = keep.iter().map(|t| t.map(|v| map[v].unwrap()));
    (SimplicialComplex::new(n, tris).expect("sub-collection of triangles"), map)
}

/// Compact surface with `boundaries` boundary circles, each the boundary of a
/// removed triangle. The closed model is subdivided until enough disjoint
/// triangles are available.
pub fn make_surface(
    orientable: bool,
    genus: usize,
    boundaries: usize,
) -> Result<CompactSurfaceModel, SurfaceError> {
    let mut closed = closed_surface(orientable, genus)?;
    let removed = loop {
        if let Some(r) = disjoint_triangles(&closed, boundaries, |_| false) {
            break r;
        }
        closed = closed.barycentric_subdivision();
    };
    let (complex, map) = remove_triangles(&closed, &removed);
    let boundary_cycles = removed
        .iter()
        .map(|t| t.iter().map(|&v| map[v].unwrap()).collect())
        .collect();
    Ok(CompactSurfaceModel {
        orientable,
        genus,
        boundary_count: boundaries,
        complex,
        boundary_cycles,
    })
}

/// Cones off each vertex loop with a new apex; apex `i` is `vertex_count + i`.
pub fn cap_cycles(k: &SimplicialComplex, cycles: &[Vec<usize>]) -> SimplicialComplex {
    let base = k.vertex_count();
    let mut tris: Vec<Triangle> = k.triangles().to_vec();
    for (i, c) in cycles.iter().enumerate() {
        let apex = base + i;
        for j in 0..c.len() {
            tris.push([c[j], c[(j + 1) % c.len()], apex]);
        }
    }
    SimplicialComplex::new(base + cycles.len(), tris).expect("cone over disjoint simple loops")
}

/// `S_{C,0}`: every boundary circle capped by a disk.
pub fn close_up(s: &CompactSurfaceModel) -> CompactSurfaceModel {
    CompactSurfaceModel {
        orientable: s.orientable,
        genus: s.genus,
        boundary_count: 0,
        complex: cap_cycles(&s.complex, &s.boundary_cycles),
        boundary_cycles: Vec::new(),
    }
}

/// `H₁` of the closed surface with the given parameters.
pub fn reference_h1_closed(
    orientable: bool,
    genus: usize,
    ring: CoefficientRing,
) -> Result<GroupSummary, SurfaceError> {
    Ok(reference_homology_closed(orientable, genus, ring)?.degrees[1].clone())
}

/// `H₀, H₁, H₂` of the closed surface with the given parameters.
pub fn reference_homology_closed(
    orientable: bool,
    genus: usize,
    ring: CoefficientRing,
) -> Result<HomologySummary, SurfaceError> {
    check_params(orientable, genus)?;
    let degrees = if orientable {
        [GroupSummary::free(1), GroupSummary::free(2 * genus), GroupSummary::free(1)]
    } else {
        match ring {
            CoefficientRing::Integers => [
                GroupSummary::free(1),
                GroupSummary::new(genus - 1, vec![2]),
                GroupSummary::zero(),
            ],
            CoefficientRing::Mod2 => [
                GroupSummary::free(1),
                GroupSummary::free(genus),
                GroupSummary::free(1),
            ],
            CoefficientRing::Rationals => [
                GroupSummary::free(1),
                GroupSummary::free(genus - 1),
                GroupSummary::zero(),
            ],
        }
    };
    Ok(HomologySummary { ring, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homology::homology;
    use CoefficientRing::*;

    #[test]
    fn closed_models() {
        for (o, g) in [(true, 0), (true, 1), (true, 2), (false, 1), (false, 2), (false, 3)] {
            let k = closed_surface(o, g).unwrap();
            assert!(k.is_closed_surface(), "{o} {g}");
            assert_eq!(k.euler_characteristic(), expected_euler(o, g, 0));
            for ring in [Integers, Mod2, Rationals] {
                assert_eq!(homology(&k, ring), reference_homology_closed(o, g, ring).unwrap());
            }
        }
        assert!(closed_surface(false, 0).is_err());
    }

    #[test]
    fn surfaces_with_boundary() {
        let torus = make_surface(true, 1, 0).unwrap();
        assert_eq!(torus.complex.euler_characteristic(), 0);
        assert_eq!(homology(&torus.complex, Integers).degrees[1], GroupSummary::free(2));

        let annulus = make_surface(true, 0, 2).unwrap();
        assert_eq!(annulus.complex.euler_characteristic(), 0);
        assert_eq!(annulus.boundary_cycles.len(), 2);

        let klein = make_surface(false, 2, 0).unwrap();
        assert_eq!(homology(&klein.complex, Integers).degrees[1], GroupSummary::new(1, vec![2]));

        let many = make_surface(true, 0, 4).unwrap();
        assert_eq!(many.complex.euler_characteristic(), -2);
        assert_eq!(many.boundary_cycles.len(), 4);
    }

    #[test]
    fn boundary_cycles_are_the_free_edges() {
        let s = make_surface(false, 1, 3).unwrap();
        let mut free: Vec<[usize; 2]> = s
            .complex
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| s.complex.triangles_on_edge(*i).len() == 1)
            .map(|(_, e)| *e)
            .collect();
        free.sort_unstable();
        let mut from_cycles: Vec<[usize; 2]> = s
            .boundary_cycles
            .iter()
            .flat_map(|c| (0..c.len()).map(move |i| crate::complex::edge(c[i], c[(i + 1) % c.len()])))
            .collect();
        from_cycles.sort_unstable();
        assert_eq!(free, from_cycles);
    }

    #[test]
    fn close_up_examples() {
        let sphere = close_up(&make_surface(true, 0, 2).unwrap());
        assert!(sphere.complex.is_closed_surface());
        assert_eq!(sphere.complex.euler_characteristic(), 2);
        let torus = close_up(&make_surface(true, 1, 1).unwrap());
        assert_eq!(homology(&torus.complex, Integers).degrees[1], GroupSummary::free(2));
        let rp2 = close_up(&make_surface(false, 1, 1).unwrap());
        assert_eq!(homology(&rp2.complex, Integers).degrees[1], GroupSummary::new(0, vec![2]));
    }

    #[test]
    fn reference_values() {
        assert_eq!(reference_h1_closed(true, 2, Integers).unwrap(), GroupSummary::free(4));
        assert_eq!(reference_h1_closed(false, 1, Integers).unwrap(), GroupSummary::new(0, vec![2]));
        assert_eq!(reference_h1_closed(false, 2, Mod2).unwrap(), GroupSummary::free(2));
        assert!(reference_h1_closed(false, 0, Mod2).is_err());
    }
}
