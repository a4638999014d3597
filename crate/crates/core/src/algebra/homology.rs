//! Homology and cohomology summaries over `Z`, `Z/2` and `Q`, cycle classes and
//! inclusion-induced maps on `H₁`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::chain::{Cells, ChainComplex, ChainError, Subquotient};
use super::ring::{Gf2, Pid};
use super::snf::smith_normal_form;
use super::matrix::Matrix;
use crate::complex::SimplicialComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientRing {
    Integers,
    Mod2,
    Rationals,
}

impl CoefficientRing {
    pub fn is_field(self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    /// Every element has additive order at most 2.
    pub fn is_two_torsion(self) -> bool {
        matches!(self, CoefficientRing::Mod2)
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientRing::Integers => "Z",
            CoefficientRing::Mod2 => "Z/2",
            CoefficientRing::Rationals => "Q",
        })
    }
}

impl FromStr for CoefficientRing {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(CoefficientRing::Integers),
            "z2" | "z/2" => Ok(CoefficientRing::Mod2),
            "q" => Ok(CoefficientRing::Rationals),
            other => Err(format!("unknown coefficient ring `{other}` (expected z, z2 or q)")),
        }
    }
}

/// Isomorphism type of a finitely generated module: free rank plus invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GroupSummary {
    pub rank: usize,
    /// Invariant factors `> 1`, each dividing the next.
    pub torsion: Vec<u64>,
}

impl GroupSummary {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn new(rank: usize, torsion: Vec<u64>) -> Self {
        Self {
            rank,
            torsion: normalize_torsion(&torsion),
        }
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &GroupSummary) -> GroupSummary {
        let mut t = self.torsion.clone();
        t.extend_from_slice(&other.torsion);
        GroupSummary::new(self.rank + other.rank, t)
    }

    /// Minimal number of generators.
    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn display(&self, ring: CoefficientRing) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let base = match ring {
            CoefficientRing::Integers => "Z",
            CoefficientRing::Mod2 => "(Z/2)",
            CoefficientRing::Rationals => "Q",
        };
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(base.trim_matches(|c| c == '(' || c == ')').to_string()),
            r => parts.push(format!("{base}^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        parts.join(" + ")
    }
}

/// Rewrites any list of cyclic orders as invariant factors (divisibility chain).
pub fn normalize_torsion(orders: &[u64]) -> Vec<u64> {
    // prime -> exponents
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &o in orders {
        let mut n = o;
        let mut p = 2;
        while n > 1 {
            if p * p > n {
                by_prime.entry(n).or_default().push(1);
                break;
            }
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                by_prime.entry(p).or_default().push(e);
            }
            p += 1;
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (i, e) in exps.into_iter().enumerate() {
            factors[len - 1 - i] *= p.pow(e);
        }
    }
    factors.retain(|&f| f > 1);
    factors
}

/// Per-degree summary of (co)homology in degrees 0, 1, 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologySummary {
    pub ring: CoefficientRing,
    pub degrees: [GroupSummary; 3],
}

impl HomologySummary {
    pub fn degree(&self, d: usize) -> &GroupSummary {
        &self.degrees[d]
    }

    pub fn betti(&self, d: usize) -> usize {
        self.degrees[d].rank
    }

    /// `Σ (-1)^d rank_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(d, g)| if d % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .degrees
            .iter()
            .enumerate()
            .map(|(d, g)| format!("{d}: {}", g.display(self.ring)))
            .collect();
        write!(f, "[{}] over {}", parts.join(", "), self.ring)
    }
}

pub(crate) fn summary_of<R: Pid>(sq: &Subquotient<R>) -> GroupSummary {
    GroupSummary::new(
        sq.free_rank(),
        sq.torsion().iter().map(|t| t.to_i64().unsigned_abs()).collect(),
    )
}

fn summarize<R: Pid>(cc: &ChainComplex<R>, cohomology: bool) -> [GroupSummary; 3] {
    [0, 1, 2].map(|d| {
        let sq = if cohomology { cc.cohomology(d) } else { cc.homology(d) };
        summary_of(&sq)
    })
}

fn drop_torsion(gs: [GroupSummary; 3]) -> [GroupSummary; 3] {
    gs.map(|g| GroupSummary::free(g.rank))
}

/// Homology of a complex in degrees 0..=2.
pub fn homology(k: &SimplicialComplex, ring: CoefficientRing) -> HomologySummary {
    let degrees = match ring {
        CoefficientRing::Integers => summarize(&ChainComplex::<i64>::from_complex(k), false),
        CoefficientRing::Mod2 => summarize(&ChainComplex::<Gf2>::from_complex(k), false),
        CoefficientRing::Rationals => {
            drop_torsion(summarize(&ChainComplex::<i64>::from_complex(k), false))
        }
    };
    HomologySummary { ring, degrees }
}

/// Cohomology by the universal coefficient theorem applied to homology over the same ring.
pub fn cohomology(k: &SimplicialComplex, ring: CoefficientRing) -> HomologySummary {
    universal_coefficients(&homology(k, ring))
}

/// `H^d ≅ Hom(H_d, A) ⊕ Ext(H_{d-1}, A)`; over a field this is just the dual.
pub fn universal_coefficients(h: &HomologySummary) -> HomologySummary {
    let degrees = [0, 1, 2].map(|d| {
        let hom = GroupSummary::free(h.degrees[d].rank);
        if d == 0 || h.ring.is_field() {
            hom
        } else {
            hom.direct_sum(&GroupSummary::new(0, h.degrees[d - 1].torsion.clone()))
        }
    });
    HomologySummary {
        ring: h.ring,
        degrees,
    }
}

/// Cohomology from the cochain complex directly; agrees with [`cohomology`].
pub fn cohomology_direct(k: &SimplicialComplex, ring: CoefficientRing) -> HomologySummary {
    let degrees = match ring {
        CoefficientRing::Integers => summarize(&ChainComplex::<i64>::from_complex(k), true),
        CoefficientRing::Mod2 => summarize(&ChainComplex::<Gf2>::from_complex(k), true),
        CoefficientRing::Rationals => {
            drop_torsion(summarize(&ChainComplex::<i64>::from_complex(k), true))
        }
    };
    HomologySummary { ring, degrees }
}

/// A homology class in the slot presentation of some group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    pub ring: CoefficientRing,
    pub coordinates: Vec<i64>,
    /// Order of each slot; `None` for free slots.
    pub orders: Vec<Option<u64>>,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }
}

fn class_from<R: Pid>(
    sq: &Subquotient<R>,
    z: &[R],
    ring: CoefficientRing,
    free_only: bool,
) -> Result<HomologyClass, ChainError> {
    let coords = sq.coordinates(z)?;
    let mut coordinates = Vec::new();
    let mut orders = Vec::new();
    for (c, o) in coords.into_iter().zip(sq.orders()) {
        if free_only && o.is_some() {
            continue;
        }
        coordinates.push(c.to_i64());
        orders.push(o.map(|d| d.to_i64().unsigned_abs()));
    }
    Ok(HomologyClass {
        ring,
        coordinates,
        orders,
    })
}

/// Class in `H₁` of the closed edge loop through `loop_vertices`.
pub fn cycle_class(
    k: &SimplicialComplex,
    loop_vertices: &[usize],
    ring: CoefficientRing,
) -> Result<HomologyClass, ChainError> {
    fn run<R: Pid>(
        k: &SimplicialComplex,
        lv: &[usize],
        ring: CoefficientRing,
        free_only: bool,
    ) -> Result<HomologyClass, ChainError> {
        let cc = ChainComplex::<R>::from_complex(k);
        let z = cc.cells().loop_chain::<R>(lv)?;
        class_from(&cc.homology(1), &z, ring, free_only)
    }
    match ring {
        CoefficientRing::Integers => run::<i64>(k, loop_vertices, ring, false),
        CoefficientRing::Mod2 => run::<Gf2>(k, loop_vertices, ring, false),
        CoefficientRing::Rationals => run::<i64>(k, loop_vertices, ring, true),
    }
}

/// Matrix of `H₁(sub) → H₁(target)` induced by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub ring: CoefficientRing,
    pub source_orders: Vec<Option<u64>>,
    pub target_orders: Vec<Option<u64>>,
    /// One row per source slot: the coordinates of its image.
    pub rows: Vec<Vec<i64>>,
}

impl InducedMap {
    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|&x| x == 0)
    }

    /// Rank of the map on free parts (over `Q` for integers, over the field otherwise).
    pub fn free_rank(&self) -> usize {
        let free_cols: Vec<usize> = self
            .target_orders
            .iter()
            .enumerate()
            .filter(|(_, o)| o.is_none())
            .map(|(i, _)| i)
            .collect();
        let rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| free_cols.iter().map(|&c| r[c]).collect())
            .collect();
        match self.ring {
            CoefficientRing::Mod2 => {
                smith_normal_form(&Matrix::<Gf2>::from_i64_rows(free_cols.len(), &rows)).rank()
            }
            _ => smith_normal_form(&Matrix::<i64>::from_i64_rows(free_cols.len(), &rows)).rank(),
        }
    }
}

/// Map on `H₁` induced by the inclusion of the subcomplex `sub` (given in the
/// target's vertex numbering).
pub fn induced_map_h1(
    target: &SimplicialComplex,
    sub: &Cells,
    ring: CoefficientRing,
) -> Result<InducedMap, ChainError> {
    for &v in sub.vertices() {
        if v >= target.vertex_count() {
            return Err(ChainError::NotASubcomplex(format!("vertex {v} not in target")));
        }
    }
    for e in sub.edges() {
        if target.edge_index(e[0], e[1]).is_none() {
            return Err(ChainError::NotASubcomplex(format!("edge {e:?} not in target")));
        }
    }
    for t in sub.triangles() {
        if target.triangle_index(*t).is_none() {
            return Err(ChainError::NotASubcomplex(format!("triangle {t:?} not in target")));
        }
    }
    fn run<R: Pid>(
        target: &SimplicialComplex,
        sub: &Cells,
        ring: CoefficientRing,
        free_only: bool,
    ) -> Result<InducedMap, ChainError> {
        let src = ChainComplex::<R>::new(sub.clone());
        let dst = ChainComplex::<R>::from_complex(target);
        let hs = src.homology(1);
        let ht = dst.homology(1);
        let keep = |o: &Option<R>| !free_only || o.is_none();
        let mut rows = Vec::new();
        for (g, o) in hs.generators().iter().zip(hs.orders()) {
            if !keep(&o) {
                continue;
            }
            let pushed = sub.push_edge_chain(g, |v| v, dst.cells())?;
            rows.push(class_from(&ht, &pushed, ring, free_only)?.coordinates);
        }
        let conv = |orders: Vec<Option<R>>| -> Vec<Option<u64>> {
            orders
                .into_iter()
                .filter(|o| keep(o))
                .map(|o| o.map(|d| d.to_i64().unsigned_abs()))
                .collect()
        };
        Ok(InducedMap {
            ring,
            source_orders: conv(hs.orders()),
            target_orders: conv(ht.orders()),
            rows,
        })
    }
    match ring {
        CoefficientRing::Integers => run::<i64>(target, sub, ring, false),
        CoefficientRing::Mod2 => run::<Gf2>(target, sub, ring, false),
        CoefficientRing::Rationals => run::<i64>(target, sub, ring, true),
    }
}
