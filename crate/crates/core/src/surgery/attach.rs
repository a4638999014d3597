//! Gluing a compact surface to a branched surface along disjoint circles, and the
//! bubble special case where the circles bound disks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::branch::{loop_is_two_sided, validate_branched_surface, BranchedSurface};
use crate::complex::{edge, triangle, SimplicialComplex, Triangle};
use crate::surfaces::{disjoint_triangles, make_surface, CompactSurfaceModel};

use super::SurgeryError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GlueDirection {
    Aligned,
    Reversed,
}

impl fmt::Display for GlueDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GlueDirection::Aligned => "aligned",
            GlueDirection::Reversed => "reversed",
        })
    }
}

/// Input of the attachment: host, circles `T_j`, the patch `S_C` and the gluing.
#[derive(Debug, Clone)]
pub struct AttachmentSpec {
    pub host: BranchedSurface,
    /// Ordered vertex loops in the host.
    pub circles: Vec<Vec<usize>>,
    pub patch: CompactSurfaceModel,
    /// Entry `i`: the circle glued to patch boundary `i`, and the direction.
    pub gluing: Vec<(usize, GlueDirection)>,
    /// Optional disk witnesses, one triangle list per circle, each bounded by it.
    pub disks: Option<Vec<Vec<Triangle>>>,
}

impl AttachmentSpec {
    /// Boundary `i` glued aligned to circle `i`.
    pub fn new(host: BranchedSurface, circles: Vec<Vec<usize>>, patch: CompactSurfaceModel) -> Self {
        let gluing = (0..circles.len()).map(|i| (i, GlueDirection::Aligned)).collect();
        Self {
            host,
            circles,
            patch,
            gluing,
            disks: None,
        }
    }

    pub fn l(&self) -> usize {
        self.circles.len()
    }

    /// Patch boundary glued to circle `j`.
    pub fn boundary_of_circle(&self, j: usize) -> Option<usize> {
        self.gluing.iter().position(|&(c, _)| c == j)
    }
}

/// The attached surface `P′` and how the patch sits in it.
#[derive(Debug, Clone)]
pub struct Attached {
    pub surface: BranchedSurface,
    /// Patch vertex → vertex of `P′`. Host vertices keep their numbers.
    pub patch_map: Vec<usize>,
    /// True when every patch boundary was identified vertex-to-vertex with its circle;
    /// false when annular strips were inserted.
    pub direct: bool,
    /// Whether each circle is two-sided in the host.
    pub two_sided: Vec<bool>,
}

fn check_circles(host: &BranchedSurface, circles: &[Vec<usize>]) -> Result<(), SurgeryError> {
    let k = &host.complex;
    let locus = host.locus_mask();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (j, c) in circles.iter().enumerate() {
        if c.len() < 3 {
            return Err(SurgeryError::InvalidCircle(format!("circle {j} has fewer than 3 vertices")));
        }
        let distinct: BTreeSet<usize> = c.iter().copied().collect();
        if distinct.len() != c.len() {
            return Err(SurgeryError::InvalidCircle(format!("circle {j} repeats a vertex")));
        }
        for &v in c {
            if v >= k.vertex_count() {
                return Err(SurgeryError::InvalidCircle(format!("circle {j}: vertex {v} out of range")));
            }
            if locus[v] {
                return Err(SurgeryError::CirclesIntersectLocus { circle: j, vertex: v });
            }
            if let Some(&other) = owner.get(&v) {
                return Err(SurgeryError::NotDisjoint { a: other, b: j });
            }
            owner.insert(v, j);
        }
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            if k.edge_index(a, b).is_none() {
                return Err(SurgeryError::InvalidCircle(format!("circle {j}: {a}-{b} is not an edge")));
            }
        }
    }
    Ok(())
}

fn check_gluing(spec: &AttachmentSpec) -> Result<(), SurgeryError> {
    let l = spec.l();
    if l == 0 {
        return Err(SurgeryError::InvalidL);
    }
    if spec.patch.boundary_cycles.len() != l {
        return Err(SurgeryError::BoundaryCountMismatch {
            circles: l,
            boundaries: spec.patch.boundary_cycles.len(),
        });
    }
    if spec.gluing.len() != l {
        return Err(SurgeryError::InvalidGluing(format!(
            "{} glue entries for {l} boundaries",
            spec.gluing.len()
        )));
    }
    let targets: BTreeSet<usize> = spec.gluing.iter().map(|g| g.0).collect();
    if targets.len() != l || targets.iter().any(|&j| j >= l) {
        return Err(SurgeryError::InvalidGluing("gluing is not a bijection".into()));
    }
    Ok(())
}

/// `cycle` read in the gluing direction.
fn oriented(cycle: &[usize], dir: GlueDirection) -> Vec<usize> {
    match dir {
        GlueDirection::Aligned => cycle.to_vec(),
        GlueDirection::Reversed => {
            let n = cycle.len();
            (0..n).map(|k| cycle[(n - k) % n]).collect()
        }
    }
}

/// Triangulated annulus between two disjoint loops, without new vertices.
pub fn zipper_strip(a: &[usize], c: &[usize]) -> Vec<Triangle> {
    let (m, n) = (a.len(), c.len());
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(m + n);
    while i < m || j < n {
        let advance_a = i < m && (j == n || (2 * i + 1) * n <= (2 * j + 1) * m);
        if advance_a {
            out.push([a[i % m], a[(i + 1) % m], c[j % n]]);
            i += 1;
        } else {
            out.push([a[i % m], c[j % n], c[(j + 1) % n]]);
            j += 1;
        }
    }
    out
}

/// Direct vertex identification, if lengths agree and it creates no conflict.
fn direct_map(spec: &AttachmentSpec, host_n: usize) -> Option<Vec<usize>> {
    let patch = &spec.patch;
    let mut map: Vec<Option<usize>> = vec![None; patch.complex.vertex_count()];
    let mut boundary_of = vec![None; patch.complex.vertex_count()];
    for (i, b) in patch.boundary_cycles.iter().enumerate() {
        let (j, dir) = spec.gluing[i];
        let t = oriented(&spec.circles[j], dir);
        if t.len() != b.len() {
            return None;
        }
        for (k, &v) in b.iter().enumerate() {
            map[v] = Some(t[k]);
            boundary_of[v] = Some((i, k));
        }
    }
    let mut next = host_n;
    let map: Vec<usize> = map
        .into_iter()
        .map(|m| {
            m.unwrap_or_else(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    for e in patch.complex.edges() {
        if let (Some((i, p)), Some((i2, q))) = (boundary_of[e[0]], boundary_of[e[1]]) {
            let len = patch.boundary_cycles[i].len();
            let consecutive = i == i2 && ((p + 1) % len == q || (q + 1) % len == p);
            if !consecutive {
                return None;
            }
        }
    }
    for t in patch.complex.triangles() {
        if t.iter().all(|&v| boundary_of[v].is_some()) {
            return None;
        }
    }
    Some(map)
}

/// Glues the patch to the host along the circles and validates the result.
pub fn attach_surface(spec: &AttachmentSpec) -> Result<Attached, SurgeryError> {
    check_gluing(spec)?;
    check_circles(&spec.host, &spec.circles)?;
    let host = &spec.host.complex;
    let host_n = host.vertex_count();
    let patch = &spec.patch;
    let mut tris: Vec<Triangle> = host.triangles().to_vec();
    let (patch_map, direct) = match direct_map(spec, host_n) {
        Some(m) => (m, true),
        None => ((host_n..host_n + patch.complex.vertex_count()).collect(), false),
    };
    for t in patch.complex.triangles() {
        tris.push(t.map(|v| patch_map[v]));
    }
    if !direct {
        for (i, b) in patch.boundary_cycles.iter().enumerate() {
            let (j, dir) = spec.gluing[i];
            let a: Vec<usize> = b.iter().map(|&v| patch_map[v]).collect();
            tris.extend(zipper_strip(&a, &oriented(&spec.circles[j], dir)));
        }
    }
    let vertex_count = patch_map.iter().copied().max().map_or(host_n, |m| (m + 1).max(host_n));
    let complex = SimplicialComplex::new(vertex_count, tris)
        .map_err(|e| SurgeryError::InvalidGluing(e.to_string()))?;
    let surface = validate_branched_surface(&complex)?;
    let two_sided = spec
        .circles
        .iter()
        .map(|c| loop_is_two_sided(host, c).unwrap_or(false))
        .collect();
    Ok(Attached {
        surface,
        patch_map,
        direct,
        two_sided,
    })
}

/// Closed star of a vertex.
pub fn star_disk(k: &SimplicialComplex, v: usize) -> Vec<Triangle> {
    k.triangles_at_vertex(v).iter().map(|&t| k.triangles()[t]).collect()
}

/// Boundary loop of a triangulated disk given as host triangles.
pub fn disk_boundary(k: &SimplicialComplex, disk: &[Triangle]) -> Result<Vec<usize>, SurgeryError> {
    let bad = |m: &str| SurgeryError::InvalidDisk(m.to_string());
    if disk.is_empty() {
        return Err(bad("empty disk"));
    }
    let mut tris: Vec<Triangle> = disk.iter().map(|t| triangle(t[0], t[1], t[2])).collect();
    tris.sort_unstable();
    tris.dedup();
    for t in &tris {
        if k.triangle_index(*t).is_none() {
            return Err(bad(&format!("{t:?} is not a triangle of the host")));
        }
    }
    let verts: BTreeSet<usize> = tris.iter().flatten().copied().collect();
    let relabel: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let back: Vec<usize> = verts.iter().copied().collect();
    let sub = SimplicialComplex::new(verts.len(), tris.iter().map(|t| t.map(|v| relabel[&v])))
        .map_err(|e| bad(&e.to_string()))?;
    if !sub.is_connected() || sub.euler_characteristic() != 1 || !sub.is_surface() {
        return Err(bad("not a triangulated disk"));
    }
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, e) in sub.edges().iter().enumerate() {
        if sub.triangles_on_edge(i).len() == 1 {
            adj.entry(back[e[0]]).or_default().push(back[e[1]]);
            adj.entry(back[e[1]]).or_default().push(back[e[0]]);
        }
    }
    let start = *adj.keys().min().ok_or_else(|| bad("disk has no boundary"))?;
    let mut cycle = vec![start];
    let first = adj[&start].iter().copied().min().unwrap();
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        if adj[&cur].len() != 2 || cycle.len() > adj.len() {
            return Err(bad("boundary is not a simple loop"));
        }
        cycle.push(cur);
        let n = &adj[&cur];
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
    }
    if cycle.len() != adj.len() {
        return Err(bad("boundary has several components"));
    }
    Ok(cycle)
}

/// Spec for a bubble attachment: circles are the disk boundaries, the patch is
/// planar with one boundary per disk.
pub fn bubble_spec(host: &BranchedSurface, disks: &[Vec<Triangle>]) -> Result<AttachmentSpec, SurgeryError> {
    if disks.is_empty() {
        return Err(SurgeryError::InvalidL);
    }
    let locus = host.locus_mask();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut circles = Vec::new();
    for (j, d) in disks.iter().enumerate() {
        let boundary = disk_boundary(&host.complex, d)?;
        let verts: BTreeSet<usize> = d.iter().flatten().copied().collect();
        for &v in &verts {
            if locus[v] {
                return Err(SurgeryError::DiskTouchesLocus { disk: j, vertex: v });
            }
            if let Some(&other) = owner.get(&v) {
                return Err(SurgeryError::DisksOverlap { a: other, b: j });
            }
            owner.insert(v, j);
        }
        circles.push(boundary);
    }
    let patch = make_surface(true, 0, disks.len()).expect("planar surface");
    let mut spec = AttachmentSpec::new(host.clone(), circles, patch);
    spec.disks = Some(disks.to_vec());
    Ok(spec)
}

pub fn bubble_attach(host: &BranchedSurface, disks: &[Vec<Triangle>]) -> Result<Attached, SurgeryError> {
    attach_surface(&bubble_spec(host, disks)?)
}

/// Picks `l` vertex-disjoint triangles off the locus as bubble disks, subdividing
/// the host until enough are available.
pub fn choose_bubble_disks(host: &BranchedSurface, l: usize) -> (BranchedSurface, Vec<Vec<Triangle>>) {
    let mut current = host.clone();
    loop {
        let mask = current.locus_mask();
        if let Some(ts) = disjoint_triangles(&current.complex, l, |v| mask[v]) {
            return (current, ts.into_iter().map(|t| vec![t]).collect());
        }
        let sub = current.complex.barycentric_subdivision();
        current = validate_branched_surface(&sub).expect("subdivision keeps the branch structure");
    }
}

/// Whether every circle of the spec bounds its disk witness.
pub fn disks_certify(spec: &AttachmentSpec) -> bool {
    let Some(disks) = &spec.disks else {
        return false;
    };
    disks.len() == spec.circles.len()
        && disks.iter().zip(&spec.circles).all(|(d, c)| {
            disk_boundary(&spec.host.complex, d).is_ok_and(|b| same_loop(&b, c))
        })
}

/// Equality of vertex loops up to rotation and reversal.
pub fn same_loop(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let edges = |c: &[usize]| -> BTreeSet<[usize; 2]> {
        (0..c.len()).map(|i| edge(c[i], c[(i + 1) % c.len()])).collect()
    };
    edges(a) == edges(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::CircleKind;
    use crate::fixtures;

    fn validated(k: SimplicialComplex) -> BranchedSurface {
        validate_branched_surface(&k).unwrap()
    }

    #[test]
    fn zipper_counts() {
        let s = zipper_strip(&[5, 6, 7], &[0, 1, 2, 3, 4]);
        assert_eq!(s.len(), 8);
        let k = SimplicialComplex::new(8, s).unwrap();
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn annulus_on_sphere() {
        let host = validated(fixtures::octahedron().barycentric_subdivision());
        let (host, disks) = choose_bubble_disks(&host, 2);
        let circles: Vec<Vec<usize>> = disks.iter().map(|d| d[0].to_vec()).collect();
        let patch = make_surface(true, 0, 2).unwrap();
        let spec = AttachmentSpec::new(host.clone(), circles, patch.clone());
        let out = attach_surface(&spec).unwrap();
        let k = &out.surface.complex;
        assert_eq!(
            k.euler_characteristic(),
            host.complex.euler_characteristic() + patch.complex.euler_characteristic()
        );
        assert_eq!(out.surface.locus.count(CircleKind::Tripod), 2);
        assert!(out.surface.normal);
    }

    #[test]
    fn disk_on_annulus_core() {
        // annulus with three rings: 0..4 inner, 4..8 middle, 8..12 outer
        let n = 4;
        let mut tris = Vec::new();
        for ring in 0..2 {
            for i in 0..n {
                let (a, b) = (ring * n + i, ring * n + (i + 1) % n);
                tris.push([a, b, a + n]);
                tris.push([b, b + n, a + n]);
            }
        }
        let host = validated(SimplicialComplex::new(3 * n, tris).unwrap());
        let core: Vec<usize> = (n..2 * n).collect();
        let patch = make_surface(true, 0, 1).unwrap();
        let spec = AttachmentSpec::new(host.clone(), vec![core], patch.clone());
        let out = attach_surface(&spec).unwrap();
        assert_eq!(out.surface.complex.euler_characteristic(), 1);
        assert_eq!(out.surface.locus.count(CircleKind::Tripod), 1);
        assert_eq!(out.surface.locus.count(CircleKind::Collar), 2);
    }

    #[test]
    fn circle_on_collar_rejected() {
        let host = validated(fixtures::annulus(4));
        let spec = AttachmentSpec::new(host, vec![vec![0, 1, 2, 3]], make_surface(true, 0, 1).unwrap());
        assert!(matches!(
            attach_surface(&spec),
            Err(SurgeryError::CirclesIntersectLocus { circle: 0, .. })
        ));
    }

    #[test]
    fn overlapping_circles_rejected() {
        let host = validated(fixtures::octahedron());
        let spec = AttachmentSpec::new(
            host,
            vec![vec![0, 2, 4], vec![0, 3, 5]],
            make_surface(true, 0, 2).unwrap(),
        );
        assert!(matches!(attach_surface(&spec), Err(SurgeryError::NotDisjoint { a: 0, b: 1 })));
    }

    #[test]
    fn disk_checks() {
        let oct = fixtures::octahedron();
        let star = star_disk(&oct, 4);
        let b = disk_boundary(&oct, &star).unwrap();
        assert!(same_loop(&b, &[0, 2, 1, 3]));
        assert!(disk_boundary(&oct, &oct.triangles().to_vec()).is_err());
        let host = validated(oct.clone());
        assert!(matches!(
            bubble_spec(&host, &[star.clone(), vec![[0, 2, 5]]]),
            Err(SurgeryError::DisksOverlap { a: 0, b: 1 })
        ));
        let annulus = validated(fixtures::annulus(4));
        assert!(matches!(
            bubble_spec(&annulus, &[vec![[0, 1, 4]]]),
            Err(SurgeryError::DiskTouchesLocus { disk: 0, .. })
        ));
    }

    #[test]
    fn direct_identification_used_when_possible() {
        let host = validated(fixtures::octahedron());
        let out = bubble_attach(&host, &[vec![[0, 2, 4]]]).unwrap();
        assert!(out.direct);
        assert_eq!(out.surface.complex.vertex_count(), 9);
        assert_eq!(out.surface.complex.euler_characteristic(), 3);
    }
}
