//! Branch locus detection, collar/tripod classification and tripod monodromy.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{edge, LinkGraph, LinkType, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchError {
    #[error("not a branched surface: {0}")]
    NotABranchedSurface(String),
    #[error("illegal monodromy (3-cycle of sheets) on the tripod circle through vertex {0}")]
    IllegalMonodromy(usize),
    #[error("not a tripod circle: {0}")]
    NotATripodCircle(String),
}

fn reject(msg: impl Into<String>) -> BranchError {
    BranchError::NotABranchedSurface(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CircleKind {
    Collar,
    Tripod,
}

impl fmt::Display for CircleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CircleKind::Collar => "collar",
            CircleKind::Tripod => "tripod",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monodromy {
    Identity,
    Transposition,
}

impl fmt::Display for Monodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monodromy::Identity => "identity",
            Monodromy::Transposition => "transposition",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchCircle {
    /// Vertex loop starting at its smallest vertex, heading to the smaller neighbor.
    pub vertices: Vec<usize>,
    pub kind: CircleKind,
    /// Filled in for tripod circles by [`validate_branched_surface`].
    pub monodromy: Option<Monodromy>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BranchLocus {
    pub circles: Vec<BranchCircle>,
}

impl BranchLocus {
    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn count(&self, kind: CircleKind) -> usize {
        self.circles.iter().filter(|c| c.kind == kind).count()
    }

    /// Indicator of locus vertices.
    pub fn vertex_mask(&self, vertex_count: usize) -> Vec<bool> {
        let mut mask = vec![false; vertex_count];
        for c in &self.circles {
            for &v in &c.vertices {
                mask[v] = true;
            }
        }
        mask
    }
}

/// A complex together with its validated branch locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchedSurface {
    pub complex: SimplicialComplex,
    pub locus: BranchLocus,
    pub normal: bool,
}

impl BranchedSurface {
    pub fn locus_mask(&self) -> Vec<bool> {
        self.locus.vertex_mask(self.complex.vertex_count())
    }

    /// One-line description, e.g. `closed surface, 0 branch circles`.
    pub fn describe(&self) -> String {
        let n = self.locus.circles.len();
        let shape = if n == 0 {
            if self.complex.is_empty() {
                "empty complex"
            } else {
                "closed surface"
            }
        } else if self.locus.count(CircleKind::Tripod) == 0 {
            "surface with boundary"
        } else {
            "branched surface"
        };
        format!(
            "{shape}, {n} branch circle{} ({} collar, {} tripod), {}",
            if n == 1 { "" } else { "s" },
            self.locus.count(CircleKind::Collar),
            self.locus.count(CircleKind::Tripod),
            if self.normal { "normal" } else { "not normal" }
        )
    }
}

/// Groups edges with triangle count other than 2 into disjoint simple cycles.
pub fn detect_branch_locus(k: &SimplicialComplex) -> Result<BranchLocus, BranchError> {
    let degrees = k.edge_degrees();
    let mut bad_adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, e) in k.edges().iter().enumerate() {
        match degrees[i] {
            2 => {}
            1 | 3 => {
                bad_adj.entry(e[0]).or_default().push(e[1]);
                bad_adj.entry(e[1]).or_default().push(e[0]);
            }
            d => return Err(reject(format!("edge {}-{} lies in {d} triangles", e[0], e[1]))),
        }
    }
    for (v, nbrs) in &bad_adj {
        if nbrs.len() != 2 {
            return Err(reject(format!(
                "vertex {v} meets {} singular edges; singular edges must form disjoint circles",
                nbrs.len()
            )));
        }
    }
    let mut starts: Vec<usize> = bad_adj.keys().copied().collect();
    starts.sort_unstable();
    let mut on_circle = vec![false; k.vertex_count()];
    let mut circles = Vec::new();
    for s in starts {
        if on_circle[s] {
            continue;
        }
        let nbrs = &bad_adj[&s];
        let mut cycle = vec![s];
        let (mut prev, mut cur) = (s, nbrs[0].min(nbrs[1]));
        while cur != s {
            cycle.push(cur);
            let n = &bad_adj[&cur];
            let next = if n[0] == prev { n[1] } else { n[0] };
            prev = cur;
            cur = next;
        }
        for &v in &cycle {
            on_circle[v] = true;
        }
        let count_of = |i: usize| {
            let e = edge(cycle[i], cycle[(i + 1) % cycle.len()]);
            degrees[k.edge_index(e[0], e[1]).unwrap()]
        };
        let first = count_of(0);
        if (1..cycle.len()).any(|i| count_of(i) != first) {
            return Err(reject(format!(
                "circle through vertex {s} mixes edges in 1 and 3 triangles"
            )));
        }
        let kind = if first == 1 {
            CircleKind::Collar
        } else {
            CircleKind::Tripod
        };
        circles.push(BranchCircle {
            vertices: cycle,
            kind,
            monodromy: None,
        });
    }
    let mut kind_at = vec![None; k.vertex_count()];
    for c in &circles {
        for &v in &c.vertices {
            kind_at[v] = Some(c.kind);
        }
    }
    for v in 0..k.vertex_count() {
        let expected = match kind_at[v] {
            None => LinkType::Cycle,
            Some(CircleKind::Collar) => LinkType::Path,
            Some(CircleKind::Tripod) => LinkType::Theta,
        };
        let got = k.classify_link(v);
        if got != expected {
            return Err(reject(format!("vertex {v} has link {got}, expected {expected}")));
        }
    }
    Ok(BranchLocus { circles })
}

/// The node paths from hub `a` to hub `b` through degree-2 nodes of the link.
fn hub_paths(link: &LinkGraph, a: usize, b: usize) -> Option<Vec<Vec<usize>>> {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for arc in &link.arcs {
        adj.entry(arc[0]).or_default().push(arc[1]);
        adj.entry(arc[1]).or_default().push(arc[0]);
    }
    let mut firsts = adj.get(&a)?.clone();
    firsts.sort_unstable();
    let mut out = Vec::new();
    for first in firsts {
        let mut path = vec![a, first];
        let (mut prev, mut cur) = (a, first);
        while cur != b {
            let n = &adj[&cur];
            if n.len() != 2 || cur == a {
                return None;
            }
            let next = if n[0] == prev { n[1] } else { n[0] };
            prev = cur;
            cur = next;
            path.push(cur);
        }
        out.push(path);
    }
    Some(out)
}

/// Permutation of the local sheets obtained by carrying them once around `cycle`.
///
/// Sheets along edge `{c_i, c_{i+1}}` are the triangles on that edge, indexed in
/// canonical order. The result maps sheet `s` on the first edge to `perm[s]` after
/// returning to it.
pub fn sheet_permutation(k: &SimplicialComplex, cycle: &[usize]) -> Result<Vec<usize>, String> {
    let n = cycle.len();
    if n < 3 {
        return Err("loop needs at least 3 vertices".into());
    }
    let sheets = |i: usize| -> Result<&[usize], String> {
        let (a, b) = (cycle[i % n], cycle[(i + 1) % n]);
        let e = k.edge_index(a, b).ok_or_else(|| format!("{a}-{b} is not an edge"))?;
        Ok(k.triangles_on_edge(e))
    };
    let width = sheets(0)?.len();
    let mut perm: Vec<usize> = (0..width).collect();
    for i in 1..=n {
        let (prev, here, next) = (cycle[i - 1], cycle[i % n], cycle[(i + 1) % n]);
        let before = sheets(i - 1)?;
        let after = sheets(i)?;
        if before.len() != width || after.len() != width {
            return Err(format!("sheet count changes at vertex {here}"));
        }
        let paths = hub_paths(&k.link(here), prev, next)
            .ok_or_else(|| format!("link of {here} does not split between {prev} and {next}"))?;
        if paths.len() != width {
            return Err(format!("link of {here} has {} branches, expected {width}", paths.len()));
        }
        let mut step = vec![usize::MAX; width];
        for p in &paths {
            let t_in = k.triangle_index(crate::complex::triangle(here, p[0], p[1])).unwrap();
            let t_out = k
                .triangle_index(crate::complex::triangle(here, p[p.len() - 2], p[p.len() - 1]))
                .unwrap();
            let from = before.iter().position(|&t| t == t_in).unwrap();
            let to = after.iter().position(|&t| t == t_out).unwrap();
            step[from] = to;
        }
        for s in perm.iter_mut() {
            *s = step[*s];
        }
    }
    Ok(perm)
}

/// Cycle type of the sheet permutation around a tripod circle.
pub fn tripod_monodromy(k: &SimplicialComplex, circle: &[usize]) -> Result<Monodromy, BranchError> {
    let perm = sheet_permutation(k, circle).map_err(BranchError::NotATripodCircle)?;
    if perm.len() != 3 {
        return Err(BranchError::NotATripodCircle(format!(
            "edges carry {} sheets, expected 3",
            perm.len()
        )));
    }
    match (0..3).filter(|&i| perm[i] == i).count() {
        3 => Ok(Monodromy::Identity),
        1 => Ok(Monodromy::Transposition),
        _ => Err(BranchError::IllegalMonodromy(circle[0])),
    }
}

/// Whether a loop in the manifold part has a two-sided (annular) neighbourhood.
pub fn loop_is_two_sided(k: &SimplicialComplex, cycle: &[usize]) -> Result<bool, String> {
    let perm = sheet_permutation(k, cycle)?;
    if perm.len() != 2 {
        return Err(format!("loop edges carry {} sheets, expected 2", perm.len()));
    }
    Ok(perm[0] == 0)
}

/// Full validation: locus detection, link checks and tripod monodromies.
pub fn validate_branched_surface(k: &SimplicialComplex) -> Result<BranchedSurface, BranchError> {
    let mut locus = detect_branch_locus(k)?;
    for c in locus.circles.iter_mut() {
        if c.kind == CircleKind::Tripod {
            c.monodromy = Some(tripod_monodromy(k, &c.vertices)?);
        }
    }
    let normal = locus
        .circles
        .iter()
        .all(|c| c.monodromy != Some(Monodromy::Transposition));
    Ok(BranchedSurface {
        complex: k.clone(),
        locus,
        normal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn closed_surfaces_have_empty_locus() {
        let b = validate_branched_surface(&fixtures::octahedron()).unwrap();
        assert!(b.locus.is_empty());
        assert!(b.normal);
        assert!(b.describe().starts_with("closed surface, 0 branch circles"));
    }

    #[test]
    fn trivial_tripod_bundle() {
        let k = fixtures::tripod_bundle(4, [0, 1, 2]);
        let b = validate_branched_surface(&k).unwrap();
        assert_eq!(b.locus.count(CircleKind::Tripod), 1);
        assert_eq!(b.locus.count(CircleKind::Collar), 3);
        assert!(b.normal);
        let tripod = b.locus.circles.iter().find(|c| c.kind == CircleKind::Tripod).unwrap();
        assert_eq!(tripod.vertices, vec![0, 1, 2, 3]);
        assert_eq!(tripod.monodromy, Some(Monodromy::Identity));
    }

    #[test]
    fn twisted_bundles() {
        let swap = validate_branched_surface(&fixtures::tripod_bundle(4, [1, 0, 2])).unwrap();
        assert!(!swap.normal);
        assert_eq!(swap.locus.count(CircleKind::Collar), 2);
        let err = validate_branched_surface(&fixtures::tripod_bundle(4, [1, 2, 0])).unwrap_err();
        assert_eq!(err, BranchError::IllegalMonodromy(0));
    }

    #[test]
    fn rejects_edge_in_four_triangles() {
        let err = validate_branched_surface(&fixtures::edge_in_four_triangles()).unwrap_err();
        assert!(matches!(err, BranchError::NotABranchedSurface(_)));
    }

    #[test]
    fn annulus_boundary_is_collar() {
        let b = validate_branched_surface(&fixtures::annulus(5)).unwrap();
        assert_eq!(b.locus.count(CircleKind::Collar), 2);
        assert_eq!(b.locus.count(CircleKind::Tripod), 0);
    }

    #[test]
    fn pinched_vertex_rejected() {
        // two triangles meeting only at vertex 0
        let k = SimplicialComplex::new(5, [[0, 1, 2], [0, 3, 4]]).unwrap();
        assert!(validate_branched_surface(&k).is_err());
    }

    #[test]
    fn two_sidedness() {
        let torus = fixtures::grid_torus(4, 4);
        assert_eq!(loop_is_two_sided(&torus, &[0, 1, 2, 3]), Ok(true));
        let rp2 = fixtures::projective_plane6();
        // 1-2-4 is a triangle of rp2, bounds a disk
        assert_eq!(loop_is_two_sided(&rp2, &[1, 2, 4]), Ok(true));
        // 0-1-3 does not bound: a one-sided loop
        assert_eq!(loop_is_two_sided(&rp2, &[0, 1, 3]), Ok(false));
    }

    #[test]
    fn normality_survives_subdivision() {
        for perm in [[0, 1, 2], [1, 0, 2], [0, 2, 1]] {
            let k = fixtures::tripod_bundle(3, perm);
            let a = validate_branched_surface(&k).unwrap();
            let b = validate_branched_surface(&k.barycentric_subdivision()).unwrap();
            assert_eq!(a.normal, b.normal);
            assert_eq!(a.locus.circles.len(), b.locus.circles.len());
        }
    }
}
