mod inputs;
mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bsurf_core::algebra::{
    cohomology, cohomology_direct, cup_product_h1, cycle_class, homology, CoefficientRing,
};
use bsurf_core::algebra::homology::universal_coefficients;
use bsurf_core::branch::{validate_branched_surface, BranchedSurface};
use bsurf_core::bsc::{self, BscDocument, BscError};
use bsurf_core::complex::Triangle;
use bsurf_core::pi1::{abelianization, edge_path_presentation, tietze_simplify};
use bsurf_core::reeb::{midlevel_reeb_graph, reeb_graph};
use bsurf_core::surfaces::make_surface;
use bsurf_core::surgery::{
    apply_heegaard, attach_surface, bubble_spec, check_thm1, choose_bubble_disks, AttachmentSpec,
    HeegaardLedger, Orientability,
};
use bsurf_core::target_map::{build_target_map, validate_local_models, MapVerdict};
use bsurf_core::SimplicialComplex;
use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "bsurf", version, about = "Branched surfaces as simplicial 2-complexes")]
struct Cli {
    /// Seed for randomized choices (printed in reports).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print nothing on success; exit code only.
    #[arg(long, global = true)]
    quiet: bool,
    /// Cross-check against the brute-force oracle where one exists.
    #[arg(long, global = true)]
    oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Coeff {
    /// Coefficient ring: z, z2 or q.
    #[arg(long, default_value = "z")]
    coeff: CoefficientRing,
}

#[derive(Args, Debug, Clone)]
struct Attachment {
    /// Host branched surface.
    host: PathBuf,
    /// Attachment spec file (`circle`, `patch`, `glue` lines).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Disk list, one per line; alone it requests a bubble attachment.
    #[arg(long)]
    disks: Option<PathBuf>,
    /// Bubble attachment along this many automatically chosen disks.
    #[arg(long, value_name = "L")]
    auto_disks: Option<usize>,
    /// Write the attached complex here.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a branched surface and list its branch circles.
    Validate { file: PathBuf },
    /// Homology in degrees 0..2.
    Homology {
        file: PathBuf,
        #[command(flatten)]
        coeff: Coeff,
        /// Also require a valid branched surface.
        #[arg(long)]
        branched: bool,
    },
    /// Cohomology, computed directly and through universal coefficients.
    Cohomology {
        file: PathBuf,
        #[command(flatten)]
        coeff: Coeff,
    },
    /// Cup product table on H^1.
    Cup {
        file: PathBuf,
        #[command(flatten)]
        coeff: Coeff,
    },
    /// Edge-path presentation of the fundamental group.
    Pi1 {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
        /// Tietze step budget.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// H_1 class of a closed edge loop.
    CycleClass {
        file: PathBuf,
        /// Loop vertices, e.g. "0 1 2".
        #[arg(long = "loop", value_name = "VERTICES")]
        vertices: String,
        #[command(flatten)]
        coeff: Coeff,
    },
    /// Write a compact surface with boundary.
    MakeSurface {
        #[arg(long, conflicts_with = "nonorientable")]
        orientable: bool,
        #[arg(long)]
        nonorientable: bool,
        /// Genus, or crosscap count when non-orientable.
        #[arg(long, default_value_t = 0)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        boundaries: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Attach a compact surface along circles of a host.
    Attach(Attachment),
    /// Attach a planar surface along the boundaries of disks.
    Bubble(Attachment),
    /// Attach and compare computed invariants with the predicted ones.
    CheckThm1 {
        #[command(flatten)]
        attachment: Attachment,
        #[command(flatten)]
        coeff: Coeff,
    },
    /// Heegaard genus bound through a sequence of attachments.
    Heegaard {
        /// Starting genus bound.
        #[arg(long, default_value_t = 0)]
        genus: usize,
        /// The starting ambient manifold is non-orientable.
        #[arg(long)]
        nonorientable: bool,
        /// One attachment: `L` or `L:orientable` / `L:nonorientable`.
        #[arg(long = "step", value_name = "L[:KIND]")]
        steps: Vec<String>,
    },
    /// Check a simplicial map to a surface against the local models.
    MapValidate {
        source: PathBuf,
        target: PathBuf,
        /// `v <source> <target>` lines.
        #[arg(long)]
        assign: PathBuf,
    },
    /// Reeb graph of the `function` values of a closed surface.
    Reeb { file: PathBuf },
    /// Counts, Euler characteristic and link types.
    Info { file: PathBuf },
    /// Info, validation and integral homology for every `.bsc` file in a directory.
    Batch { dir: PathBuf },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

type Outcome = Result<RunReport, (Option<RunReport>, Failure)>;

fn usage(msg: impl Into<String>) -> (Option<RunReport>, Failure) {
    (None, Failure::Usage(msg.into()))
}

fn read(path: &Path) -> Result<Vec<u8>, (Option<RunReport>, Failure)> {
    fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path, rep: &mut RunReport) -> Result<String, (Option<RunReport>, Failure)> {
    let bytes = read(path)?;
    rep.input(&path.display().to_string(), &bytes);
    String::from_utf8(bytes).map_err(|_| usage(format!("{}: not UTF-8", path.display())))
}

fn load(path: &Path, rep: &mut RunReport) -> Result<BscDocument, (Option<RunReport>, Failure)> {
    let text = read_text(path, rep)?;
    bsc::parse(&text).map_err(|e| match e {
        BscError::Complex(_) => (None, Failure::Invalid(format!("{}: {e}", path.display()))),
        _ => usage(format!("{}: {e}", path.display())),
    })
}

fn branched(k: &SimplicialComplex, rep: RunReport) -> Result<(BranchedSurface, RunReport), (Option<RunReport>, Failure)> {
    match validate_branched_surface(k) {
        Ok(b) => Ok((b, rep)),
        Err(e) => Err((Some(rep), Failure::Invalid(e.to_string()))),
    }
}

fn write_out(path: &Path, text: &str) -> Result<(), (Option<RunReport>, Failure)> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn describe_locus(b: &BranchedSurface, rep: &mut RunReport) {
    rep.line(b.describe());
    for (i, c) in b.locus.circles.iter().enumerate() {
        let m = c.monodromy.map_or(String::new(), |m| format!(", monodromy {m}"));
        rep.line(format!("  circle {i}: {}, length {}{m}", c.kind, c.vertices.len()));
    }
}

fn validate(file: &Path) -> Outcome {
    let mut rep = RunReport::new("validate");
    let doc = load(file, &mut rep)?;
    let (b, mut rep) = branched(&doc.complex, rep)?;
    describe_locus(&b, &mut rep);
    if !doc.branches.is_empty() && !doc.declared_matches(&b.locus) {
        rep.verdict("INVALID");
        return Err((Some(rep), Failure::Invalid("declared branch circles differ from the detected locus".into())));
    }
    rep.verdict("valid");
    Ok(rep)
}

fn homology_cmd(file: &Path, ring: CoefficientRing, require_branched: bool) -> Outcome {
    let mut rep = RunReport::new("homology");
    let doc = load(file, &mut rep)?;
    let rep = if require_branched {
        branched(&doc.complex, rep)?.1
    } else {
        rep
    };
    let mut rep = rep;
    let h = homology(&doc.complex, ring);
    for d in 0..3 {
        rep.line(format!("H{d}: {}", h.degree(d).display(ring)));
    }
    rep.line(format!("euler characteristic: {}", doc.complex.euler_characteristic()));
    Ok(rep)
}

fn cohomology_cmd(file: &Path, ring: CoefficientRing) -> Outcome {
    let mut rep = RunReport::new("cohomology");
    let doc = load(file, &mut rep)?;
    let direct = cohomology_direct(&doc.complex, ring);
    let uct = universal_coefficients(&homology(&doc.complex, ring));
    for d in 0..3 {
        rep.line(format!("H^{d}: {}", direct.degree(d).display(ring)));
    }
    let agree = direct == uct && cohomology(&doc.complex, ring) == direct;
    rep.line(format!("universal coefficients: {}", if agree { "MATCH" } else { "FAIL" }));
    if agree {
        Ok(rep)
    } else {
        Err((Some(rep), Failure::Invalid("cohomology disagrees with universal coefficients".into())))
    }
}

fn order_label(o: Option<u64>) -> String {
    o.map_or("free".to_string(), |d| format!("order {d}"))
}

fn cup_cmd(file: &Path, ring: CoefficientRing) -> Outcome {
    let mut rep = RunReport::new("cup");
    let doc = load(file, &mut rep)?;
    let t = cup_product_h1(&doc.complex, ring);
    let h1: Vec<String> = t.h1_orders.iter().map(|&o| order_label(o)).collect();
    let h2: Vec<String> = t.h2_orders.iter().map(|&o| order_label(o)).collect();
    rep.line(format!("H^1 generators over {ring}: [{}]", h1.join(", ")));
    rep.line(format!("H^2 generators over {ring}: [{}]", h2.join(", ")));
    for (i, row) in t.products.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            let coords: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            rep.line(format!("g{i} u g{j} = [{}]", coords.join(" ")));
        }
    }
    if let Some(form) = t.form() {
        let rows: Vec<String> = form
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        rep.line(format!("form: [{}]", rows.join("; ")));
    }
    rep.line(format!("trivial: {}", if t.is_zero() { "yes" } else { "no" }));
    Ok(rep)
}

fn pi1_cmd(file: &Path, basepoint: usize, budget: usize) -> Outcome {
    let mut rep = RunReport::new("pi1");
    let doc = load(file, &mut rep)?;
    let g = edge_path_presentation(&doc.complex, basepoint).map_err(|e| (None, Failure::Invalid(e.to_string())))?;
    let simple = tietze_simplify(&g.presentation, budget);
    rep.line(format!("basepoint: {basepoint}"));
    rep.line(format!(
        "presentation: {} generators, {} relators",
        g.presentation.generators,
        g.presentation.relators.len()
    ));
    rep.line(format!("simplified: {simple}"));
    rep.line(format!(
        "abelianization: {}",
        abelianization(&simple).display(CoefficientRing::Integers)
    ));
    rep.line(format!("free: {}", if simple.is_free() { "yes" } else { "not shown" }));
    Ok(rep)
}

fn cycle_class_cmd(file: &Path, vertices: &str, ring: CoefficientRing) -> Outcome {
    let mut rep = RunReport::new("cycle-class");
    let doc = load(file, &mut rep)?;
    let lv = inputs::parse_loop(vertices).map_err(usage)?;
    let c = cycle_class(&doc.complex, &lv, ring).map_err(|e| (None, Failure::Invalid(e.to_string())))?;
    let slots: Vec<String> = c
        .coordinates
        .iter()
        .zip(&c.orders)
        .map(|(x, o)| match o {
            Some(d) => format!("{x} (mod {d})"),
            None => x.to_string(),
        })
        .collect();
    rep.line(format!("class in H1 over {ring}: [{}]", slots.join(", ")));
    rep.line(format!("zero: {}", if c.is_zero() { "yes" } else { "no" }));
    Ok(rep)
}

fn make_surface_cmd(orientable: bool, genus: usize, boundaries: usize, output: Option<&Path>) -> Outcome {
    let mut rep = RunReport::new("make-surface");
    let s = make_surface(orientable, genus, boundaries).map_err(|e| usage(e.to_string()))?;
    let b = validate_branched_surface(&s.complex).map_err(|e| (None, Failure::Invalid(e.to_string())))?;
    let text = bsc::write(&BscDocument::new(s.complex.clone()).with_locus(&b.locus));
    rep.line(format!(
        "{} surface, genus {genus}, {boundaries} boundary circles",
        if orientable { "orientable" } else { "non-orientable" }
    ));
    rep.line(format!(
        "{} vertices, {} triangles, euler characteristic {}",
        s.complex.vertex_count(),
        s.complex.triangles().len(),
        s.complex.euler_characteristic()
    ));
    match output {
        Some(p) => {
            write_out(p, &text)?;
            rep.line(format!("written: {}", p.display()));
        }
        None => rep.block(&text),
    }
    Ok(rep)
}

/// Vertex-disjoint triangles off the locus in a seeded order, subdividing when short.
fn seeded_disks(host: &BranchedSurface, l: usize, seed: u64) -> (BranchedSurface, Vec<Vec<Triangle>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = host.clone();
    loop {
        let mask = current.locus_mask();
        let mut ts: Vec<Triangle> = current
            .complex
            .triangles()
            .iter()
            .filter(|t| t.iter().all(|&v| !mask[v]))
            .copied()
            .collect();
        ts.shuffle(&mut rng);
        let mut used = BTreeSet::new();
        let mut picked = Vec::new();
        for t in ts {
            if t.iter().all(|v| !used.contains(v)) {
                used.extend(t);
                picked.push(vec![t]);
                if picked.len() == l {
                    return (current, picked);
                }
            }
        }
        let sub = current.complex.barycentric_subdivision();
        current = validate_branched_surface(&sub).expect("subdivision keeps the branch structure");
    }
}

fn build_spec(a: &Attachment, seed: Option<u64>, rep: &mut RunReport) -> Result<AttachmentSpec, (Option<RunReport>, Failure)> {
    let doc = load(&a.host, rep)?;
    let host = validate_branched_surface(&doc.complex).map_err(|e| (None, Failure::Invalid(e.to_string())))?;
    let disks = match &a.disks {
        Some(p) => Some(inputs::parse_disks(&read_text(p, rep)?).map_err(|e| usage(format!("{}: {e}", p.display())))?),
        None => None,
    };
    let invalid = |e: bsurf_core::surgery::SurgeryError| (None, Failure::Invalid(e.to_string()));
    match (&a.spec, disks, a.auto_disks) {
        (Some(p), disks, None) => {
            let s = inputs::parse_spec(&read_text(p, rep)?).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            let patch = make_surface(s.orientable, s.genus, s.boundaries).map_err(|e| usage(e.to_string()))?;
            let mut spec = AttachmentSpec::new(host, s.circles, patch);
            spec.gluing = s.gluing;
            spec.disks = disks;
            Ok(spec)
        }
        (None, Some(disks), None) => bubble_spec(&host, &disks).map_err(invalid),
        (None, None, Some(l)) => {
            if l == 0 {
                return Err(usage("--auto-disks needs at least 1"));
            }
            let (host, disks) = match seed {
                Some(s) => seeded_disks(&host, l, s),
                None => choose_bubble_disks(&host, l),
            };
            if host.complex != doc.complex {
                rep.line(format!("host subdivided to {} vertices to fit {l} disks", host.complex.vertex_count()));
            }
            bubble_spec(&host, &disks).map_err(invalid)
        }
        _ => Err(usage("give exactly one of --spec, --disks or --auto-disks (--disks may accompany --spec)")),
    }
}

fn attach_cmd(name: &str, a: &Attachment, seed: Option<u64>, bubble: bool) -> Outcome {
    let mut rep = RunReport::new(name);
    rep.seed(seed.filter(|_| a.auto_disks.is_some()));
    if bubble && a.spec.is_some() {
        return Err(usage("bubble takes --disks or --auto-disks, not --spec"));
    }
    if !bubble && a.spec.is_none() {
        return Err(usage("attach needs --spec"));
    }
    let spec = build_spec(a, seed, &mut rep)?;
    let attached = attach_surface(&spec).map_err(|e| (None, Failure::Invalid(e.to_string())))?;
    let k = &attached.surface.complex;
    rep.line(format!(
        "attached along {} circle{} ({})",
        spec.l(),
        if spec.l() == 1 { "" } else { "s" },
        if attached.direct { "vertex identification" } else { "collar strips" }
    ));
    describe_locus(&attached.surface, &mut rep);
    rep.line(format!(
        "{} vertices, {} triangles, euler characteristic {}",
        k.vertex_count(),
        k.triangles().len(),
        k.euler_characteristic()
    ));
    let h = homology(k, CoefficientRing::Integers);
    for d in 0..3 {
        rep.line(format!("H{d}: {}", h.degree(d).display(CoefficientRing::Integers)));
    }
    if let Some(p) = &a.output {
        write_out(p, &bsc::write(&BscDocument::new(k.clone()).with_locus(&attached.surface.locus)))?;
        rep.line(format!("written: {}", p.display()));
    }
    Ok(rep)
}

fn check_cmd(a: &Attachment, ring: CoefficientRing, seed: Option<u64>) -> Outcome {
    let mut rep = RunReport::new("check-thm1");
    rep.seed(seed.filter(|_| a.auto_disks.is_some()));
    let spec = build_spec(a, seed, &mut rep)?;
    let report = check_thm1(&spec, ring).map_err(|e| (None, Failure::Invalid(e.to_string())))?;
    rep.block(&report.to_string());
    if let Some(p) = &a.output {
        let s = &report.attached.surface;
        write_out(p, &bsc::write(&BscDocument::new(s.complex.clone()).with_locus(&s.locus)))?;
        rep.line(format!("written: {}", p.display()));
    }
    if report.all_match() {
        rep.verdict("all MATCH");
        Ok(rep)
    } else {
        rep.verdict("FAIL");
        Err((Some(rep), Failure::Invalid("some asserted verdicts failed".into())))
    }
}

fn parse_step(s: &str) -> Result<(usize, Orientability), String> {
    let (l, kind) = s.split_once(':').unwrap_or((s, "orientable"));
    let l = l.parse().map_err(|_| format!("bad step `{s}`"))?;
    let kind = match kind {
        "orientable" | "o" => Orientability::Orientable,
        "nonorientable" | "non-orientable" | "n" => Orientability::NonOrientable,
        _ => return Err(format!("bad step kind in `{s}`")),
    };
    Ok((l, kind))
}

fn heegaard_cmd(genus: usize, nonorientable: bool, steps: &[String]) -> Outcome {
    let mut rep = RunReport::new("heegaard");
    let mut ledger = HeegaardLedger::new(genus, !nonorientable);
    rep.line(format!(
        "start: genus bound {genus}, {} ambient",
        if nonorientable { "non-orientable" } else { "orientable" }
    ));
    for s in steps {
        let (l, kind) = parse_step(s).map_err(usage)?;
        ledger = match apply_heegaard(&ledger, l, kind) {
            Ok(next) => next,
            Err(e) => {
                rep.verdict("REJECTED");
                return Err((Some(rep), Failure::Invalid(e.to_string())));
            }
        };
        let r = ledger.history.last().unwrap();
        rep.line(format!("attach l = {l} ({kind}): genus bound {} -> {}", r.genus_before, r.genus_after));
    }
    rep.verdict(format!("genus bound {}", ledger.genus_bound));
    Ok(rep)
}

fn map_validate_cmd(source: &Path, target: &Path, assign: &Path) -> Outcome {
    let mut rep = RunReport::new("map-validate");
    let src = load(source, &mut rep)?;
    let tgt = load(target, &mut rep)?;
    let text = read_text(assign, &mut rep)?;
    let a = inputs::parse_assignment(&text, src.complex.vertex_count())
        .map_err(|e| usage(format!("{}: {e}", assign.display())))?;
    let (b, mut rep) = branched(&src.complex, rep)?;
    let map = match build_target_map(&b, &tgt.complex, &a) {
        Ok(m) => m,
        Err(e) => {
            rep.verdict("FAIL");
            return Err((Some(rep), Failure::Invalid(e.to_string())));
        }
    };
    let lm = validate_local_models(&map);
    rep.block(&lm.to_string());
    match lm.verdict {
        MapVerdict::Fail(r) => Err((Some(rep), Failure::Invalid(r))),
        _ => Ok(rep),
    }
}

fn reeb_cmd(file: &Path, oracle: bool) -> Outcome {
    let mut rep = RunReport::new("reeb");
    let doc = load(file, &mut rep)?;
    let values = doc
        .function_values()
        .ok_or_else(|| usage(format!("{}: every vertex needs a `function` line", file.display())))?;
    let invalid = |e: bsurf_core::reeb::ReebError| (None, Failure::Invalid(e.to_string()));
    let g = reeb_graph(&doc.complex, &values).map_err(invalid)?;
    rep.block(&g.to_string());
    if oracle {
        let o = midlevel_reeb_graph(&doc.complex, &values).map_err(invalid)?;
        let ok = g.equivalent(&o);
        rep.line(format!("oracle: {}", if ok { "MATCH" } else { "FAIL" }));
        if !ok {
            return Err((Some(rep), Failure::Invalid("sweep and oracle disagree".into())));
        }
    }
    Ok(rep)
}

fn info_lines(k: &SimplicialComplex, rep: &mut RunReport) {
    rep.line(format!(
        "vertices {}, edges {}, triangles {}",
        k.vertex_count(),
        k.edges().len(),
        k.triangles().len()
    ));
    rep.line(format!("euler characteristic: {}", k.euler_characteristic()));
    rep.line(format!("components: {}", k.connected_components().len()));
    let mut degrees: BTreeMap<usize, usize> = BTreeMap::new();
    for d in k.edge_degrees() {
        *degrees.entry(d).or_default() += 1;
    }
    let degrees: Vec<String> = degrees.iter().map(|(d, n)| format!("{d}:{n}")).collect();
    rep.line(format!("edge degrees: {}", degrees.join(" ")));
    let mut links: BTreeMap<String, usize> = BTreeMap::new();
    for v in 0..k.vertex_count() {
        *links.entry(k.classify_link(v).to_string()).or_default() += 1;
    }
    let links: Vec<String> = links.iter().map(|(t, n)| format!("{t}:{n}")).collect();
    rep.line(format!("vertex links: {}", links.join(" ")));
}

fn info_cmd(file: &Path) -> Outcome {
    let mut rep = RunReport::new("info");
    let doc = load(file, &mut rep)?;
    info_lines(&doc.complex, &mut rep);
    if !doc.branches.is_empty() {
        rep.line(format!("declared branch circles: {}", doc.branches.len()));
    }
    if !doc.function.is_empty() {
        rep.line(format!("function values: {}", doc.function.len()));
    }
    Ok(rep)
}

fn batch_cmd(dir: &Path) -> Outcome {
    let mut rep = RunReport::new("batch");
    let entries = fs::read_dir(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "bsc"))
        .collect();
    files.sort();
    let mut failed = 0;
    for p in &files {
        let name = p.file_name().unwrap().to_string_lossy().to_string();
        let bytes = read(p)?;
        rep.input(&name, &bytes);
        rep.line(format!("== {name}"));
        let doc = match std::str::from_utf8(&bytes).map_err(|e| e.to_string()).and_then(|t| bsc::parse(t).map_err(|e| e.to_string())) {
            Ok(d) => d,
            Err(e) => {
                failed += 1;
                rep.line(format!("error: {e}"));
                continue;
            }
        };
        info_lines(&doc.complex, &mut rep);
        match validate_branched_surface(&doc.complex) {
            Ok(b) => describe_locus(&b, &mut rep),
            Err(e) => {
                failed += 1;
                rep.line(format!("invalid: {e}"));
            }
        }
        rep.line(format!("homology: {}", homology(&doc.complex, CoefficientRing::Integers)));
    }
    rep.verdict(format!("{} files, {failed} invalid", files.len()));
    if failed == 0 {
        Ok(rep)
    } else {
        Err((Some(rep), Failure::Invalid(format!("{failed} invalid files"))))
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Homology { file, coeff, branched } => homology_cmd(file, coeff.coeff, *branched),
        Command::Cohomology { file, coeff } => cohomology_cmd(file, coeff.coeff),
        Command::Cup { file, coeff } => cup_cmd(file, coeff.coeff),
        Command::Pi1 { file, basepoint, budget } => pi1_cmd(file, *basepoint, *budget),
        Command::CycleClass { file, vertices, coeff } => cycle_class_cmd(file, vertices, coeff.coeff),
        Command::MakeSurface {
            orientable,
            nonorientable,
            genus,
            boundaries,
            output,
        } => {
            if *orientable == *nonorientable {
                return Err(usage("give exactly one of --orientable or --nonorientable"));
            }
            make_surface_cmd(*orientable, *genus, *boundaries, output.as_deref())
        }
        Command::Attach(a) => attach_cmd("attach", a, cli.seed, false),
        Command::Bubble(a) => attach_cmd("bubble", a, cli.seed, true),
        Command::CheckThm1 { attachment, coeff } => check_cmd(attachment, coeff.coeff, cli.seed),
        Command::Heegaard {
            genus,
            nonorientable,
            steps,
        } => heegaard_cmd(*genus, *nonorientable, steps),
        Command::MapValidate { source, target, assign } => map_validate_cmd(source, target, assign),
        Command::Reeb { file } => reeb_cmd(file, cli.oracle),
        Command::Info { file } => info_cmd(file),
        Command::Batch { dir } => batch_cmd(dir),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let outcome = dispatch(&cli);
    let elapsed = start.elapsed();
    let (report, code) = match outcome {
        Ok(rep) => (Some(rep), 0),
        Err((rep, Failure::Invalid(msg))) => {
            eprintln!("error: {msg}");
            (rep, 1)
        }
        Err((rep, Failure::Usage(msg))) => {
            eprintln!("usage error: {msg}");
            (rep, 2)
        }
    };
    if !cli.quiet {
        if let Some(rep) = report {
            print!("{}", rep.render());
        }
        eprintln!("time: {:.3} ms", elapsed.as_secs_f64() * 1e3);
    }
    ExitCode::from(code)
}
