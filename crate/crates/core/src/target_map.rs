//! Simplicial maps from a branched surface to a triangulated target surface and
//! combinatorial checks of the fold-map local models.
//!
//! Immersion conditions are checked in their PL form: injectivity of the vertex map
//! on closed stars (manifold and collar vertices) and on each sheet at a tripod vertex.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::branch::{validate_branched_surface, BranchError, BranchedSurface, CircleKind};
use crate::complex::{triangle, LinkType, SimplicialComplex, Triangle};
use crate::surgery::{attach_surface, AttachmentSpec, SurgeryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TargetMapError {
    #[error("assignment has {found} entries, source has {expected} vertices")]
    AssignmentLength { expected: usize, found: usize },
    #[error("vertex {vertex} is assigned to {image}, outside the target")]
    ImageOutOfRange { vertex: usize, image: usize },
    #[error("target vertex {0} is not a surface point")]
    TargetNotSurface(usize),
    #[error("triangle {0:?} has a degenerate image")]
    DegenerateImageTriangle(Triangle),
    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("vertex {vertex} maps to frame vertex {image}")]
    ImageTouchesFrame { vertex: usize, image: usize },
    #[error("map source does not match the attachment host")]
    SourceMismatch,
    #[error("attached map needs the patch glued by direct vertex identification")]
    RequiresDirectGluing,
    #[error("circle {circle}: patch vertex {vertex} maps to {found}, circle maps to {expected}")]
    BoundaryMismatch {
        circle: usize,
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("local model fails at vertex {vertex}: {reason}")]
    LocalModelFail { vertex: usize, reason: String },
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Branch(#[from] BranchError),
}

/// A validated simplicial, nondegenerate map avoiding the target frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSurfaceMap {
    pub source: BranchedSurface,
    pub target: SimplicialComplex,
    pub assignment: Vec<usize>,
    /// Target vertices with path links (the boundary standing in for infinity).
    pub frame: Vec<bool>,
}

impl TargetSurfaceMap {
    pub fn image(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn image_triangle(&self, t: Triangle) -> Triangle {
        triangle(self.assignment[t[0]], self.assignment[t[1]], self.assignment[t[2]])
    }
}

pub fn build_target_map(
    source: &BranchedSurface,
    target: &SimplicialComplex,
    assignment: &[usize],
) -> Result<TargetSurfaceMap, TargetMapError> {
    let n = source.complex.vertex_count();
    if assignment.len() != n {
        return Err(TargetMapError::AssignmentLength {
            expected: n,
            found: assignment.len(),
        });
    }
    let tn = target.vertex_count();
    if let Some((vertex, &image)) = assignment.iter().enumerate().find(|(_, &w)| w >= tn) {
        return Err(TargetMapError::ImageOutOfRange { vertex, image });
    }
    let mut frame = vec![false; tn];
    for (w, f) in frame.iter_mut().enumerate() {
        match target.classify_link(w) {
            LinkType::Cycle => {}
            LinkType::Path => *f = true,
            _ => return Err(TargetMapError::TargetNotSurface(w)),
        }
    }
    for t in source.complex.triangles() {
        let [a, b, c] = t.map(|v| assignment[v]);
        if a == b || b == c || a == c {
            return Err(TargetMapError::DegenerateImageTriangle(*t));
        }
        let image = triangle(a, b, c);
        if target.triangle_index(image).is_none() {
            return Err(TargetMapError::NotSimplicial(format!(
                "triangle {t:?} maps to {image:?}, which is not a target triangle"
            )));
        }
    }
    if let Some((vertex, &image)) = assignment.iter().enumerate().find(|(_, &w)| frame[w]) {
        return Err(TargetMapError::ImageTouchesFrame { vertex, image });
    }
    Ok(TargetSurfaceMap {
        source: source.clone(),
        target: target.clone(),
        assignment: assignment.to_vec(),
        frame,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalModel {
    Manifold,
    Collar,
    /// Sheets on each side of the image of the branch circle, smaller count first.
    Tripod { pattern: (usize, usize) },
}

impl fmt::Display for LocalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalModel::Manifold => f.write_str("manifold"),
            LocalModel::Collar => f.write_str("collar"),
            LocalModel::Tripod { pattern } => write!(f, "tripod ({}|{})", pattern.0, pattern.1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCertificate {
    pub vertex: usize,
    pub model: LocalModel,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapVerdict {
    BornFromSsns,
    LocallyBornOnly,
    Fail(String),
}

impl fmt::Display for MapVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapVerdict::BornFromSsns => f.write_str("born from an SSNS fold map"),
            MapVerdict::LocallyBornOnly => f.write_str("locally born from an SSNS fold map (not normal)"),
            MapVerdict::Fail(r) => write!(f, "FAIL: {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalModelReport {
    pub verdict: MapVerdict,
    pub certificates: Vec<VertexCertificate>,
}

impl LocalModelReport {
    pub fn tripod_patterns(&self) -> Vec<(usize, (usize, usize))> {
        self.certificates
            .iter()
            .filter_map(|c| match c.model {
                LocalModel::Tripod { pattern } => Some((c.vertex, pattern)),
                _ => None,
            })
            .collect()
    }

    pub fn failures(&self) -> impl Iterator<Item = &VertexCertificate> {
        self.certificates.iter().filter(|c| c.failure.is_some())
    }
}

impl fmt::Display for LocalModelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let count = |pred: fn(&LocalModel) -> bool| {
            self.certificates.iter().filter(|c| pred(&c.model)).count()
        };
        writeln!(
            f,
            "local models: {} manifold, {} collar, {} tripod vertices (PL immersion = injective stars)",
            count(|m| *m == LocalModel::Manifold),
            count(|m| *m == LocalModel::Collar),
            count(|m| matches!(m, LocalModel::Tripod { .. }))
        )?;
        for (v, (a, b)) in self.tripod_patterns() {
            writeln!(f, "  tripod vertex {v}: side pattern ({a}|{b})")?;
        }
        for c in self.failures() {
            writeln!(f, "  vertex {} ({}): {}", c.vertex, c.model, c.failure.as_ref().unwrap())?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

fn injective(images: impl IntoIterator<Item = usize>) -> bool {
    let mut seen = HashSet::new();
    images.into_iter().all(|w| seen.insert(w))
}

/// Link of an interior target vertex as a cyclic node order.
fn link_cycle(k: &SimplicialComplex, w: usize) -> Vec<usize> {
    let link = k.link(w);
    let mut order = vec![link.nodes[0]];
    let mut prev = usize::MAX;
    loop {
        let cur = *order.last().unwrap();
        let next = link
            .arcs
            .iter()
            .filter_map(|a| {
                if a[0] == cur {
                    Some(a[1])
                } else if a[1] == cur {
                    Some(a[0])
                } else {
                    None
                }
            })
            .find(|&x| x != prev)
            .unwrap();
        if next == order[0] {
            break;
        }
        prev = cur;
        order.push(next);
    }
    order
}

fn tripod_model(
    c: &TargetSurfaceMap,
    v: usize,
    prev: usize,
    next: usize,
) -> (LocalModel, Option<String>) {
    let k = &c.source.complex;
    let f = |x: usize| c.assignment[x];
    let unknown = LocalModel::Tripod { pattern: (0, 0) };
    if f(prev) == f(next) {
        return (unknown, Some("restriction to the branch circle is not locally injective".into()));
    }
    let Some(sheets) = k.link(v).theta_paths(prev, next) else {
        return (unknown, Some("link is not a theta with hubs at the circle neighbors".into()));
    };
    let cycle = link_cycle(&c.target, f(v));
    let pos = |w: usize| cycle.iter().position(|&x| x == w);
    let (Some(p), Some(q)) = (pos(f(prev)), pos(f(next))) else {
        return (unknown, Some("circle neighbors leave the target link".into()));
    };
    let len = cycle.len();
    // side 0: strictly between p and q walking forward
    let side_of = |w: usize| -> Option<usize> {
        let i = pos(w)?;
        let fwd = (i + len - p) % len;
        let span = (q + len - p) % len;
        if fwd == 0 || fwd == span {
            None
        } else if fwd < span {
            Some(0)
        } else {
            Some(1)
        }
    };
    let mut counts = [0usize; 2];
    for (s, sheet) in sheets.iter().enumerate() {
        let interior = &sheet[1..sheet.len() - 1];
        if !injective(std::iter::once(f(v)).chain(sheet.iter().map(|&x| f(x)))) {
            return (unknown, Some(format!("sheet {s} is not injective")));
        }
        let side = if interior.is_empty() {
            if (p + 1) % len == q {
                Some(0)
            } else if (q + 1) % len == p {
                Some(1)
            } else {
                None
            }
        } else {
            let sides: Vec<Option<usize>> = interior.iter().map(|&x| side_of(f(x))).collect();
            if sides.iter().all(|s| *s == sides[0]) {
                sides[0]
            } else {
                None
            }
        };
        match side {
            Some(side) => counts[side] += 1,
            None => return (unknown, Some(format!("sheet {s} does not lie on one side of the circle"))),
        }
    }
    let pattern = (counts[0].min(counts[1]), counts[0].max(counts[1]));
    let model = LocalModel::Tripod { pattern };
    if pattern == (1, 2) {
        (model, None)
    } else {
        (model, Some(format!("side pattern ({}|{})", pattern.0, pattern.1)))
    }
}

pub fn validate_local_models(c: &TargetSurfaceMap) -> LocalModelReport {
    let k = &c.source.complex;
    let f = |x: usize| c.assignment[x];
    let mut circle_of = vec![None; k.vertex_count()];
    for circle in &c.source.locus.circles {
        let n = circle.vertices.len();
        for (i, &v) in circle.vertices.iter().enumerate() {
            let prev = circle.vertices[(i + n - 1) % n];
            let next = circle.vertices[(i + 1) % n];
            circle_of[v] = Some((circle.kind, prev, next));
        }
    }
    let star_injective = |v: usize| injective(std::iter::once(f(v)).chain(k.neighbors(v).into_iter().map(f)));
    let certificates: Vec<VertexCertificate> = (0..k.vertex_count())
        .map(|v| {
            let (model, failure) = match circle_of[v] {
                None => (
                    LocalModel::Manifold,
                    (!star_injective(v)).then(|| "immersion: star does not map injectively".to_string()),
                ),
                Some((CircleKind::Collar, _, _)) => (
                    LocalModel::Collar,
                    (!star_injective(v)).then(|| "collar: star does not map injectively".to_string()),
                ),
                Some((CircleKind::Tripod, prev, next)) => tripod_model(c, v, prev, next),
            };
            VertexCertificate { vertex: v, model, failure }
        })
        .collect();
    let verdict = match certificates.iter().find(|c| c.failure.is_some()) {
        Some(bad) => MapVerdict::Fail(format!("vertex {}: {}", bad.vertex, bad.failure.as_ref().unwrap())),
        None if c.source.normal => MapVerdict::BornFromSsns,
        None => MapVerdict::LocallyBornOnly,
    };
    LocalModelReport { verdict, certificates }
}

/// A target triangle meeting no image triangle, if any.
pub fn image_complement_nonempty(c: &TargetSurfaceMap) -> Option<Triangle> {
    let image: HashSet<Triangle> = c
        .source
        .complex
        .triangles()
        .iter()
        .map(|&t| c.image_triangle(t))
        .collect();
    c.target.triangles().iter().copied().find(|t| !image.contains(t))
}

/// Extends `c` over the attached surface using `patch_assignment` on the patch
/// vertices, and checks the local models of the result.
pub fn validate_attached_map(
    c: &TargetSurfaceMap,
    spec: &AttachmentSpec,
    patch_assignment: &[usize],
) -> Result<(TargetSurfaceMap, LocalModelReport), TargetMapError> {
    if c.source.complex != spec.host.complex {
        return Err(TargetMapError::SourceMismatch);
    }
    let pn = spec.patch.complex.vertex_count();
    if patch_assignment.len() != pn {
        return Err(TargetMapError::AssignmentLength {
            expected: pn,
            found: patch_assignment.len(),
        });
    }
    let attached = attach_surface(spec)?;
    if !attached.direct {
        return Err(TargetMapError::RequiresDirectGluing);
    }
    let host_n = spec.host.complex.vertex_count();
    for (b, cycle) in spec.patch.boundary_cycles.iter().enumerate() {
        let (j, _) = spec.gluing[b];
        for &p in cycle {
            let v = attached.patch_map[p];
            if c.assignment[v] != patch_assignment[p] {
                return Err(TargetMapError::BoundaryMismatch {
                    circle: j,
                    vertex: p,
                    expected: c.assignment[v],
                    found: patch_assignment[p],
                });
            }
        }
    }
    let mut combined = c.assignment.clone();
    combined.resize(attached.surface.complex.vertex_count(), 0);
    for (p, &w) in patch_assignment.iter().enumerate() {
        let v = attached.patch_map[p];
        if v >= host_n {
            combined[v] = w;
        }
    }
    let surface = validate_branched_surface(&attached.surface.complex)?;
    let map = build_target_map(&surface, &c.target, &combined)?;
    let report = validate_local_models(&map);
    if let Some(bad) = report.failures().next() {
        return Err(TargetMapError::LocalModelFail {
            vertex: bad.vertex,
            reason: bad.failure.clone().unwrap(),
        });
    }
    Ok((map, report))
}
