//! Computed-vs-predicted comparison for an attachment, with explicit generators,
//! cup-product checks over `Z/2` and a fundamental-group cross-check.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::algebra::chain::{pairing, Cells, ChainComplex, ChainError, Subquotient};
use crate::algebra::cup::cup_cochain;
use crate::algebra::homology::{
    cohomology, cycle_class, homology, summary_of, CoefficientRing, GroupSummary, HomologySummary,
};
use crate::algebra::matrix::Matrix;
use crate::algebra::ring::{Gf2, Pid};
use crate::algebra::snf::{inverse, smith_normal_form};
use crate::complex::SimplicialComplex;
use crate::pi1::{abelianization, edge_path_presentation, tietze_simplify, GroupPresentation};
use crate::surfaces::{close_up, reference_h1_closed};

use super::attach::{attach_surface, disks_certify, Attached, AttachmentSpec};
use super::predict::{predict_thm1, Thm1Prediction};
use super::SurgeryError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Match,
    Fail,
    NotPredicted,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Match
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "MATCH",
            Verdict::Fail => "FAIL",
            Verdict::NotPredicted => "NOT PREDICTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub item: &'static str,
    pub computed: GroupSummary,
    pub predicted: Option<GroupSummary>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypotheses {
    pub connected: bool,
    pub null_homologous: Vec<bool>,
    /// `S_C` orientable, or coefficients of exponent 2.
    pub patch_admissible: bool,
    pub ring_is_pid: bool,
}

impl Hypotheses {
    pub fn hold(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.connected {
            out.push("P is not connected".to_string());
        }
        for (j, ok) in self.null_homologous.iter().enumerate() {
            if !ok {
                out.push(format!("T_{j} is not null-homologous"));
            }
        }
        if !self.patch_admissible {
            out.push("S_C is non-orientable over a ring with elements of order > 2".to_string());
        }
        if !self.ring_is_pid {
            out.push("coefficient ring is not a PID".to_string());
        }
        out
    }
}

/// Explicit generators of `H₁(P′)`: images of `H₁(P)`, bridge cycles, and
/// patch circles pushed off the capping disks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCertificate {
    pub host_generators: usize,
    pub bridge_generators: usize,
    pub patch_generators: usize,
    pub slots: usize,
    pub spans: bool,
    pub independent: bool,
    /// Bridge cycles as vertex loops in `P′`.
    pub bridge_loops: Vec<Vec<usize>>,
}

impl GeneratorCertificate {
    pub fn ok(&self) -> bool {
        self.spans && self.independent
    }
}

/// Cup products of the duals of the constructed `H₁(P′; Z/2)` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupCertificate {
    pub basis_ok: bool,
    pub bridge_bridge_zero: bool,
    pub bridge_patch_zero: bool,
    pub host_subring: bool,
    pub patch_subring: bool,
}

impl CupCertificate {
    pub fn ok(&self) -> bool {
        self.basis_ok
            && self.bridge_bridge_zero
            && self.bridge_patch_zero
            && self.host_subring
            && self.patch_subring
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Check {
    pub abelianization: GroupSummary,
    pub h1_integral: GroupSummary,
    /// Every circle bounds a disk witness.
    pub null_homotopy_certified: bool,
    pub predicted_abelianization: Option<GroupSummary>,
    pub simplified: Option<GroupPresentation>,
    /// For a simply connected host and planar patch: the simplified presentation is
    /// free of rank `l - 1`.
    pub free_shape: Option<bool>,
}

impl Pi1Check {
    pub fn abelianization_matches(&self) -> bool {
        self.abelianization == self.h1_integral
    }

    pub fn ok(&self) -> bool {
        self.abelianization_matches()
            && self
                .predicted_abelianization
                .as_ref()
                .is_none_or(|p| *p == self.abelianization)
            && self.free_shape != Some(false)
    }
}

#[derive(Debug, Clone)]
pub struct Thm1Report {
    pub ring: CoefficientRing,
    pub l: usize,
    pub hypotheses: Hypotheses,
    pub euler_host: i64,
    pub euler_patch: i64,
    pub euler_result: i64,
    pub host_homology: HomologySummary,
    pub homology: HomologySummary,
    pub cohomology: HomologySummary,
    pub prediction: Option<Thm1Prediction>,
    pub comparisons: Vec<Comparison>,
    pub generators: Option<GeneratorCertificate>,
    pub cup: Option<CupCertificate>,
    pub pi1: Pi1Check,
    pub host_normal: bool,
    pub two_sided: Vec<bool>,
    pub normal: bool,
    pub new_tripod_circles: usize,
    pub attached: Attached,
}

impl Thm1Report {
    pub fn euler_additive(&self) -> bool {
        self.euler_result == self.euler_host + self.euler_patch
    }

    /// `P′` is normal exactly when the host is and every circle is two-sided.
    pub fn normality_consistent(&self) -> bool {
        self.normal == (self.host_normal && self.two_sided.iter().all(|&t| t))
    }

    /// Every asserted verdict holds.
    pub fn all_match(&self) -> bool {
        self.euler_additive()
            && self.comparisons.iter().all(|c| c.verdict != Verdict::Fail)
            && self.generators.as_ref().is_none_or(|g| g.ok())
            && self.cup.as_ref().is_none_or(|c| c.ok())
            && self.pi1.ok()
            && self.normality_consistent()
            && self.new_tripod_circles == self.l
    }

    pub fn comparison(&self, item: &str) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.item == item)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for Thm1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.ring;
        writeln!(f, "attachment check over {r}, l = {}", self.l)?;
        let nh: Vec<&str> = self.hypotheses.null_homologous.iter().map(|&b| yes(b)).collect();
        writeln!(
            f,
            "hypotheses: P connected {}; circles null-homologous [{}]; patch admissible {}",
            yes(self.hypotheses.connected),
            nh.join(" "),
            yes(self.hypotheses.patch_admissible)
        )?;
        for fail in self.hypotheses.failures() {
            writeln!(f, "  hypothesis failed: {fail}")?;
        }
        writeln!(
            f,
            "euler: host {} + patch {} = {}, result {} [{}]",
            self.euler_host,
            self.euler_patch,
            self.euler_host + self.euler_patch,
            self.euler_result,
            Verdict::of(self.euler_additive())
        )?;
        for c in &self.comparisons {
            let predicted = c
                .predicted
                .as_ref()
                .map_or_else(|| "-".to_string(), |p| p.display(r));
            writeln!(
                f,
                "{}: computed {}, predicted {} [{}]",
                c.item,
                c.computed.display(r),
                predicted,
                c.verdict
            )?;
        }
        match &self.generators {
            Some(g) => writeln!(
                f,
                "generators: {} host + {} bridge + {} patch for {} slots; span {}, independent {} [{}]",
                g.host_generators,
                g.bridge_generators,
                g.patch_generators,
                g.slots,
                yes(g.spans),
                yes(g.independent),
                Verdict::of(g.ok())
            )?,
            None => writeln!(f, "generators: not checked")?,
        }
        match &self.cup {
            Some(c) => writeln!(
                f,
                "cup over Z/2: dual basis {}; bridge x bridge zero {}; bridge x patch zero {}; host subring {}; patch subring {} [{}]",
                yes(c.basis_ok),
                yes(c.bridge_bridge_zero),
                yes(c.bridge_patch_zero),
                yes(c.host_subring),
                yes(c.patch_subring),
                Verdict::of(c.ok())
            )?,
            None => writeln!(f, "cup over Z/2: not checked")?,
        }
        let p = &self.pi1;
        writeln!(
            f,
            "pi1: abelianization {}, H_1 over Z {} [{}]",
            p.abelianization.display(CoefficientRing::Integers),
            p.h1_integral.display(CoefficientRing::Integers),
            Verdict::of(p.abelianization_matches())
        )?;
        match &p.predicted_abelianization {
            Some(pred) => writeln!(
                f,
                "pi1: null-homotopy certified by disks; predicted abelianization {} [{}]",
                pred.display(CoefficientRing::Integers),
                Verdict::of(*pred == p.abelianization)
            )?,
            None => writeln!(f, "pi1: free-product statement unverified (no disk certificate)")?,
        }
        if let Some(s) = &p.simplified {
            writeln!(f, "pi1: simplified presentation {s}")?;
        }
        if let Some(fs) = p.free_shape {
            writeln!(f, "pi1: free of rank {} [{}]", self.l - 1, Verdict::of(fs))?;
        }
        let ts: Vec<&str> = self.two_sided.iter().map(|&b| yes(b)).collect();
        writeln!(
            f,
            "normal: host {}, circles two-sided [{}], result {} [{}]",
            yes(self.host_normal),
            ts.join(" "),
            yes(self.normal),
            Verdict::of(self.normality_consistent())
        )?;
        writeln!(
            f,
            "branch circles: {} new tripod [{}]",
            self.new_tripod_circles,
            Verdict::of(self.new_tripod_circles == self.l)
        )?;
        write!(f, "overall: {}", Verdict::of(self.all_match()))
    }
}

/// Bridge loops in `P′`: from `T_0[0]` through patch vertices to `T_j`, then back
/// along a shortest host path.
fn bridge_loops(spec: &AttachmentSpec, attached: &Attached) -> Vec<Vec<usize>> {
    let k = &attached.surface.complex;
    let host = &spec.host.complex;
    let host_n = host.vertex_count();
    let s = spec.circles[0][0];
    let mut out = Vec::new();
    for target in &spec.circles[1..] {
        let targets: HashSet<usize> = target.iter().copied().collect();
        let mut parent = vec![usize::MAX; k.vertex_count()];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        let mut end = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for w in k.neighbors(v) {
                if parent[w] != usize::MAX {
                    continue;
                }
                if w >= host_n {
                    parent[w] = v;
                    queue.push_back(w);
                } else if v != s && targets.contains(&w) {
                    parent[w] = v;
                    end = Some(w);
                    break 'bfs;
                }
            }
        }
        let t = end.expect("patch joins every pair of circles");
        let mut patch_path = vec![t];
        while *patch_path.last().unwrap() != s {
            patch_path.push(parent[*patch_path.last().unwrap()]);
        }
        patch_path.reverse();
        // host path t -> s
        let mut hp = vec![usize::MAX; host_n];
        hp[t] = t;
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            if v == s {
                break;
            }
            for w in host.neighbors(v) {
                if hp[w] == usize::MAX {
                    hp[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut back = vec![s];
        while *back.last().unwrap() != t {
            back.push(hp[*back.last().unwrap()]);
        }
        back.reverse();
        // patch_path: s .. t ; back: t .. s
        let mut cycle = patch_path;
        cycle.extend_from_slice(&back[1..back.len() - 1]);
        out.push(cycle);
    }
    out
}

struct Geometry<'a> {
    spec: &'a AttachmentSpec,
    attached: &'a Attached,
    closed: SimplicialComplex,
    bridges: Vec<Vec<usize>>,
}

struct Families<R> {
    chains: Vec<Vec<R>>,
    orders: Vec<Option<R>>,
    host: usize,
    bridges: usize,
    patch: usize,
}

impl<R> Families<R> {
    fn host_range(&self) -> std::ops::Range<usize> {
        0..self.host
    }
    fn bridge_range(&self) -> std::ops::Range<usize> {
        self.host..self.host + self.bridges
    }
    fn patch_range(&self) -> std::ops::Range<usize> {
        self.host + self.bridges..self.host + self.bridges + self.patch
    }
}

struct Side<R: Pid> {
    cc: ChainComplex<R>,
    h1: Subquotient<R>,
}

impl<R: Pid> Side<R> {
    fn new(k: &SimplicialComplex) -> Self {
        let cc = ChainComplex::<R>::from_complex(k);
        let h1 = cc.homology(1);
        Self { cc, h1 }
    }
}

/// Rewrites a 1-cycle of `S_{C,0}` as a cycle of `S_C` by replacing each edge to a
/// cone apex with a path along the capped boundary loop.
fn push_off_apexes<R: Pid>(
    g: &Geometry,
    closed_cells: &Cells,
    patch_cells: &Cells,
    z: &[R],
) -> Result<Vec<R>, ChainError> {
    let patch = &g.spec.patch;
    let pn = patch.complex.vertex_count();
    let mut out = vec![R::zero(); patch_cells.count(1)];
    for (i, &c) in z.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let [u, w] = closed_cells.edges()[i];
        if w < pn {
            let pos = patch_cells.edge_position(u, w).expect("patch edge");
            out[pos] = out[pos].add(c);
        } else {
            let cycle = &patch.boundary_cycles[w - pn];
            let k = cycle.iter().position(|&v| v == u).expect("cone over boundary");
            let path: Vec<usize> = (0..=k).rev().map(|i| cycle[i]).collect();
            let chain = patch_cells.path_chain::<R>(&path)?;
            for (o, x) in out.iter_mut().zip(chain) {
                *o = o.add(x.mul(c));
            }
        }
    }
    Ok(out)
}

fn families<R: Pid>(
    g: &Geometry,
    target: &Side<R>,
    host: &Side<R>,
    closed: &Side<R>,
) -> Result<Families<R>, ChainError> {
    let p_cells = target.cc.cells();
    let mut chains = Vec::new();
    let mut orders = Vec::new();
    for (z, o) in host.h1.generators().iter().zip(host.h1.orders()) {
        chains.push(host.cc.cells().push_edge_chain(z, |v| v, p_cells)?);
        orders.push(o);
    }
    for b in &g.bridges {
        chains.push(p_cells.loop_chain::<R>(b)?);
        orders.push(None);
    }
    let patch_cells = Cells::from_complex(&g.spec.patch.complex);
    let map = &g.attached.patch_map;
    for (z, o) in closed.h1.generators().iter().zip(closed.h1.orders()) {
        let on_patch = push_off_apexes(g, closed.cc.cells(), &patch_cells, z)?;
        chains.push(patch_cells.push_edge_chain(&on_patch, |v| map[v], p_cells)?);
        orders.push(o);
    }
    Ok(Families {
        host: host.h1.len(),
        bridges: g.bridges.len(),
        patch: closed.h1.len(),
        chains,
        orders,
    })
}

fn full_rank_unimodular<R: Pid>(rows: &[Vec<R>], cols: usize) -> bool {
    if cols == 0 {
        return true;
    }
    let snf = smith_normal_form(&Matrix::from_rows(cols, rows));
    snf.rank() == cols && snf.diagonal.iter().all(|d| d.is_unit())
}

/// Whether the families span `H₁(P′)` and form a basis of the predicted shape.
fn certify<R: Pid>(fam: &Families<R>, h1: &Subquotient<R>, free_only: bool) -> Result<(bool, bool), ChainError> {
    let orders = h1.orders();
    let keep: Vec<usize> = (0..orders.len())
        .filter(|&i| !free_only || orders[i].is_none())
        .collect();
    let s = keep.len();
    let mut rows = Vec::new();
    let mut declared = Vec::new();
    let mut free_declared = 0;
    for (z, o) in fam.chains.iter().zip(&fam.orders) {
        if free_only && o.is_some() {
            continue;
        }
        let c = h1.coordinates(z)?;
        rows.push(keep.iter().map(|&i| c[i]).collect::<Vec<R>>());
        match o {
            Some(d) => {
                declared.push(d.to_i64().unsigned_abs());
                let scaled: Vec<R> = z.iter().map(|&x| x.mul(*d)).collect();
                if !h1.is_zero_class(&scaled)? {
                    return Ok((false, false));
                }
            }
            None => free_declared += 1,
        }
    }
    let generator_rows = rows.len();
    if !free_only {
        for (slot, o) in orders.iter().enumerate() {
            if let Some(d) = o {
                let mut r = vec![R::zero(); s];
                r[slot] = *d;
                rows.push(r);
            }
        }
    }
    let spans = full_rank_unimodular(&rows, s);
    let target = if free_only {
        GroupSummary::free(s)
    } else {
        summary_of(h1)
    };
    let source = GroupSummary::new(free_declared, declared);
    let independent = spans && source == target && generator_rows == target.generator_count();
    Ok((spans, independent))
}

/// Cocycles dual to `cycles` inside the span of `cocycles`, if they form dual bases.
fn duals<R: Pid>(cocycles: &[Vec<R>], cycles: &[Vec<R>]) -> Option<Vec<Vec<R>>> {
    let s = cycles.len();
    if cocycles.len() != s {
        return None;
    }
    if s == 0 {
        return Some(Vec::new());
    }
    let e_rows: Vec<Vec<R>> = cocycles
        .iter()
        .map(|h| cycles.iter().map(|z| pairing(h, z)).collect())
        .collect();
    let e = Matrix::from_rows(s, &e_rows);
    let x = inverse(&e)?.transpose();
    let len = cocycles[0].len();
    Some(
        (0..s)
            .map(|k| {
                let mut d = vec![R::zero(); len];
                for (i, h) in cocycles.iter().enumerate() {
                    let c = x.get(i, k);
                    if !c.is_zero() {
                        for (dv, hv) in d.iter_mut().zip(h) {
                            *dv = dv.add(c.mul(*hv));
                        }
                    }
                }
                d
            })
            .collect(),
    )
}

fn product_rows<R: Pid>(
    cells: &Cells,
    h2: &Subquotient<R>,
    duals: &[Vec<R>],
    idx: &[usize],
) -> Result<Vec<Vec<R>>, ChainError> {
    let mut rows = Vec::new();
    for &a in idx {
        for &b in idx {
            rows.push(h2.coordinates(&cup_cochain(cells, &duals[a], &duals[b]))?);
        }
    }
    Ok(rows)
}

fn rank<R: Pid>(rows: &[Vec<R>], cols: usize) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    smith_normal_form(&Matrix::from_rows(cols, rows)).rank()
}

/// The products of `a` and of `b` satisfy the same linear relations.
fn same_relations<R: Pid>(a: &[Vec<R>], a_cols: usize, b: &[Vec<R>], b_cols: usize) -> bool {
    let joined: Vec<Vec<R>> = a
        .iter()
        .zip(b)
        .map(|(x, y)| x.iter().chain(y).copied().collect())
        .collect();
    let (ra, rb, rj) = (rank(a, a_cols), rank(b, b_cols), rank(&joined, a_cols + b_cols));
    ra == rb && rb == rj
}

/// Duals of the H₁ generators of a complex on its own, and their product rows.
fn intrinsic_products(k: &SimplicialComplex) -> Result<Option<(Vec<Vec<Gf2>>, usize)>, ChainError> {
    let cc = ChainComplex::<Gf2>::from_complex(k);
    let z = cc.homology(1).generators();
    let h = cc.cohomology(1).generators();
    let h2 = cc.cohomology(2);
    let Some(d) = duals(&h, &z) else {
        return Ok(None);
    };
    let idx: Vec<usize> = (0..d.len()).collect();
    Ok(Some((product_rows(cc.cells(), &h2, &d, &idx)?, h2.len())))
}

fn cup_certificate(g: &Geometry) -> Result<CupCertificate, ChainError> {
    let target = Side::<Gf2>::new(&g.attached.surface.complex);
    let host = Side::<Gf2>::new(&g.spec.host.complex);
    let closed = Side::<Gf2>::new(&g.closed);
    let fam = families(g, &target, &host, &closed)?;
    let h1_co = target.cc.cohomology(1);
    let h2 = target.cc.cohomology(2);
    let fail = CupCertificate {
        basis_ok: false,
        bridge_bridge_zero: false,
        bridge_patch_zero: false,
        host_subring: false,
        patch_subring: false,
    };
    let Some(d) = duals(&h1_co.generators(), &fam.chains) else {
        return Ok(fail);
    };
    let cells = target.cc.cells();
    let is_zero = |a: usize, b: usize| -> Result<bool, ChainError> {
        h2.is_zero_class(&cup_cochain(cells, &d[a], &d[b]))
    };
    let mut bridge_bridge_zero = true;
    let mut bridge_patch_zero = true;
    for a in fam.bridge_range() {
        for b in fam.bridge_range() {
            bridge_bridge_zero &= is_zero(a, b)?;
        }
        for b in fam.patch_range() {
            bridge_patch_zero &= is_zero(a, b)? && is_zero(b, a)?;
        }
    }
    let host_idx: Vec<usize> = fam.host_range().collect();
    let patch_idx: Vec<usize> = fam.patch_range().collect();
    let host_rows = product_rows(cells, &h2, &d, &host_idx)?;
    let patch_rows = product_rows(cells, &h2, &d, &patch_idx)?;
    let host_subring = match intrinsic_products(&g.spec.host.complex)? {
        Some((rows, cols)) => same_relations(&rows, cols, &host_rows, h2.len()),
        None => false,
    };
    let patch_subring = match intrinsic_products(&g.closed)? {
        Some((rows, cols)) => same_relations(&rows, cols, &patch_rows, h2.len()),
        None => false,
    };
    Ok(CupCertificate {
        basis_ok: true,
        bridge_bridge_zero,
        bridge_patch_zero,
        host_subring,
        patch_subring,
    })
}

fn generator_certificate<R: Pid>(g: &Geometry, free_only: bool) -> Result<GeneratorCertificate, ChainError> {
    let target = Side::<R>::new(&g.attached.surface.complex);
    let host = Side::<R>::new(&g.spec.host.complex);
    let closed = Side::<R>::new(&g.closed);
    let fam = families(g, &target, &host, &closed)?;
    let (spans, independent) = certify(&fam, &target.h1, free_only)?;
    let count = |range: std::ops::Range<usize>| {
        range.filter(|&i| !free_only || fam.orders[i].is_none()).count()
    };
    let slots = if free_only {
        target.h1.free_rank()
    } else {
        target.h1.len()
    };
    Ok(GeneratorCertificate {
        host_generators: count(fam.host_range()),
        bridge_generators: count(fam.bridge_range()),
        patch_generators: count(fam.patch_range()),
        slots,
        spans,
        independent,
        bridge_loops: g.bridges.clone(),
    })
}

fn compare(item: &'static str, computed: &GroupSummary, predicted: Option<&GroupSummary>) -> Comparison {
    Comparison {
        item,
        computed: computed.clone(),
        predicted: predicted.cloned(),
        verdict: match predicted {
            Some(p) => Verdict::of(p == computed),
            None => Verdict::NotPredicted,
        },
    }
}

/// Attaches, computes, and compares against the prediction.
pub fn check_thm1(spec: &AttachmentSpec, ring: CoefficientRing) -> Result<Thm1Report, SurgeryError> {
    let attached = attach_surface(spec)?;
    let host = &spec.host.complex;
    let result = &attached.surface.complex;
    let l = spec.l();

    let null_homologous: Vec<bool> = spec
        .circles
        .iter()
        .map(|c| cycle_class(host, c, ring).is_ok_and(|cl| cl.is_zero()))
        .collect();
    let hypotheses = Hypotheses {
        connected: host.is_connected(),
        null_homologous,
        patch_admissible: spec.patch.orientable || ring.is_two_torsion(),
        ring_is_pid: true,
    };
    let host_homology = homology(host, ring);
    let hom = homology(result, ring);
    let coh = cohomology(result, ring);

    let prediction = if hypotheses.hold() {
        Some(predict_thm1(&host_homology, l, spec.patch.orientable, spec.patch.genus, ring)?)
    } else {
        None
    };
    let p = prediction.as_ref();
    let comparisons = vec![
        compare("H_1", &hom.degrees[1], p.map(|p| &p.h1)),
        compare("H_2", &hom.degrees[2], p.map(|p| &p.h2)),
        compare("H^1", &coh.degrees[1], p.map(|p| &p.coh1)),
        compare("H^2", &coh.degrees[2], p.and_then(|p| p.coh2.as_ref())),
    ];

    let closed = close_up(&spec.patch).complex;
    let geometry = Geometry {
        spec,
        attached: &attached,
        closed,
        bridges: if hypotheses.hold() {
            bridge_loops(spec, &attached)
        } else {
            Vec::new()
        },
    };
    let chain_err = |e: ChainError| SurgeryError::InvalidGluing(format!("generator construction: {e}"));
    let generators = if hypotheses.hold() {
        Some(
            match ring {
                CoefficientRing::Integers => generator_certificate::<i64>(&geometry, false),
                CoefficientRing::Mod2 => generator_certificate::<Gf2>(&geometry, false),
                CoefficientRing::Rationals => generator_certificate::<i64>(&geometry, true),
            }
            .map_err(chain_err)?,
        )
    } else {
        None
    };
    let z2_null = spec.circles.iter().all(|c| {
        cycle_class(host, c, CoefficientRing::Mod2).is_ok_and(|cl| cl.is_zero())
    });
    let cup = if hypotheses.connected && z2_null && hypotheses.hold() {
        Some(cup_certificate(&geometry).map_err(chain_err)?)
    } else {
        None
    };

    let pres = edge_path_presentation(result, 0).map_err(|e| SurgeryError::InvalidGluing(e.to_string()));
    let h1_integral = homology(result, CoefficientRing::Integers).degrees[1].clone();
    let null_homotopy_certified = disks_certify(spec);
    let mut pi1 = Pi1Check {
        abelianization: GroupSummary::zero(),
        h1_integral,
        null_homotopy_certified,
        predicted_abelianization: None,
        simplified: None,
        free_shape: None,
    };
    if let Ok(pres) = pres {
        pi1.abelianization = abelianization(&pres.presentation);
        if null_homotopy_certified && hypotheses.connected {
            let host_pres = edge_path_presentation(host, 0).expect("connected host");
            let closed_h1 = reference_h1_closed(spec.patch.orientable, spec.patch.genus, CoefficientRing::Integers)
                .expect("valid patch parameters");
            pi1.predicted_abelianization = Some(
                abelianization(&host_pres.presentation)
                    .direct_sum(&GroupSummary::free(l - 1))
                    .direct_sum(&closed_h1),
            );
            let budget = 10 * pres.presentation.relators.len();
            let simplified = tietze_simplify(&pres.presentation, budget);
            let host_trivial = tietze_simplify(&host_pres.presentation, 10 * host_pres.presentation.relators.len())
                == GroupPresentation::default();
            if host_trivial && spec.patch.orientable && spec.patch.genus == 0 {
                pi1.free_shape = Some(simplified.generators == l - 1 && simplified.is_free());
            }
            pi1.simplified = Some(simplified);
        }
    }

    let tripods = |s: &crate::branch::BranchedSurface| s.locus.count(crate::branch::CircleKind::Tripod);
    Ok(Thm1Report {
        ring,
        l,
        hypotheses,
        euler_host: host.euler_characteristic(),
        euler_patch: spec.patch.complex.euler_characteristic(),
        euler_result: result.euler_characteristic(),
        host_homology,
        homology: hom,
        cohomology: coh,
        prediction,
        comparisons,
        generators,
        cup,
        pi1,
        host_normal: spec.host.normal,
        two_sided: attached.two_sided.clone(),
        normal: attached.surface.normal,
        new_tripod_circles: tripods(&attached.surface) - tripods(&spec.host),
        attached,
    })
}
