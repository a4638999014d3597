//! Seeded random attachment instances shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use bsurf_core::branch::{validate_branched_surface, BranchedSurface};
use bsurf_core::complex::Triangle;
use bsurf_core::fixtures;
use bsurf_core::surfaces::{make_surface, CompactSurfaceModel};
use bsurf_core::surgery::{disk_boundary, star_disk, AttachmentSpec, GlueDirection};
use bsurf_core::SimplicialComplex;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn hosts() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("sphere", fixtures::octahedron()),
        ("torus", fixtures::torus7()),
        ("genus-2", fixtures::genus2()),
        ("klein", fixtures::klein_bottle()),
        ("capped-tripod", fixtures::capped_tripod_bundle(4, [0, 1, 2])),
        ("capped-tripod-twisted", fixtures::capped_tripod_bundle(4, [0, 2, 1])),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatchKind {
    Planar,
    GenusOne,
    Mobius,
}

impl PatchKind {
    pub fn model(self, l: usize) -> CompactSurfaceModel {
        match self {
            PatchKind::Planar => make_surface(true, 0, l).unwrap(),
            PatchKind::GenusOne => make_surface(true, 1, l).unwrap(),
            PatchKind::Mobius => make_surface(false, 1, l).unwrap(),
        }
    }
}

/// `l` vertex-disjoint disks off the locus, each a single triangle or a vertex star,
/// subdividing the host when the greedy pick runs short.
pub fn random_disks(host: &BranchedSurface, l: usize, rng: &mut impl Rng) -> (BranchedSurface, Vec<Vec<Triangle>>) {
    let mut current = host.clone();
    loop {
        let k = &current.complex;
        let locus = current.locus_mask();
        let mut candidates: Vec<Vec<Triangle>> = k
            .triangles()
            .iter()
            .filter(|t| t.iter().all(|&v| !locus[v]))
            .map(|&t| vec![t])
            .collect();
        for v in 0..k.vertex_count() {
            let star = star_disk(k, v);
            if star.iter().flatten().all(|&w| !locus[w]) && disk_boundary(k, &star).is_ok() {
                candidates.push(star);
            }
        }
        candidates.shuffle(rng);
        let mut used = BTreeSet::new();
        let mut picked = Vec::new();
        for d in candidates {
            let vs: BTreeSet<usize> = d.iter().flatten().copied().collect();
            if vs.is_disjoint(&used) {
                used.extend(vs);
                picked.push(d);
                if picked.len() == l {
                    return (current, picked);
                }
            }
        }
        current = validate_branched_surface(&current.complex.barycentric_subdivision()).unwrap();
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub seed: u64,
    pub name: String,
    pub spec: AttachmentSpec,
    pub patch: PatchKind,
}

/// Host, `l` and patch drawn from the seed; circles bound random disks, glued in a
/// random order and direction.
pub fn random_instance(seed: u64) -> Instance {
    let mut r = rng(seed);
    let all = hosts();
    let (host_name, k) = all[r.gen_range(0..all.len())].clone();
    let patch = match r.gen_range(0..5) {
        0 | 1 => PatchKind::Planar,
        2 | 3 => PatchKind::GenusOne,
        _ => PatchKind::Mobius,
    };
    let l = if patch == PatchKind::Mobius { 1 } else { r.gen_range(1..=3) };
    let host = validate_branched_surface(&k).unwrap();
    let (host, disks) = random_disks(&host, l, &mut r);
    let circles: Vec<Vec<usize>> = disks.iter().map(|d| disk_boundary(&host.complex, d).unwrap()).collect();
    let mut spec = AttachmentSpec::new(host, circles, patch.model(l));
    let mut order: Vec<usize> = (0..l).collect();
    order.shuffle(&mut r);
    spec.gluing = order
        .into_iter()
        .map(|j| {
            let dir = if r.gen_bool(0.5) {
                GlueDirection::Aligned
            } else {
                GlueDirection::Reversed
            };
            (j, dir)
        })
        .collect();
    spec.disks = Some(disks);
    Instance {
        seed,
        name: format!("{host_name} l={l} {patch:?}"),
        spec,
        patch,
    }
}
