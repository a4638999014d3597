//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, then a single assert.
//!
//! Runs without the libtest harness: `cargo test -p bsurf-core --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use bsurf_core::algebra::homology::{homology, CoefficientRing};
use bsurf_core::algebra::{cup_product_h1, smith_normal_form, Matrix};
use bsurf_core::branch::{validate_branched_surface, BranchError, CircleKind};
use bsurf_core::fixtures;
use bsurf_core::pi1::{abelianization, edge_path_presentation, tietze_simplify};
use bsurf_core::reeb::{midlevel_reeb_graph, reeb_betti1, reeb_graph};
use bsurf_core::surgery::{
    apply_heegaard, bubble_spec, check_thm1, choose_bubble_disks, HeegaardLedger, Orientability,
    Thm1Report, Verdict,
};
use bsurf_core::target_map::{build_target_map, validate_local_models, MapVerdict};
use bsurf_core::SimplicialComplex;
use common::{random_instance, rng, PatchKind};
use rand::Rng;

const THM1_INSTANCES: u64 = 30;

struct Outcome {
    id: &'static str,
    title: &'static str,
    detail: String,
    passed: bool,
}

fn run(id: &'static str, title: &'static str, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f));
    let (passed, detail) = match result {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panic: {msg}"))
        }
    };
    Outcome {
        id,
        title,
        detail: format!("{detail} ({:.2}s)", start.elapsed().as_secs_f64()),
        passed,
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every random instance, checked over `Z` (orientable patches) and `Z/2`.
fn thm1_reports() -> Vec<(String, CoefficientRing, Thm1Report)> {
    let mut out = Vec::new();
    for seed in 0..THM1_INSTANCES {
        let inst = random_instance(seed);
        let mut rings = vec![CoefficientRing::Mod2];
        if inst.patch != PatchKind::Mobius {
            rings.insert(0, CoefficientRing::Integers);
        }
        for ring in rings {
            let report = check_thm1(&inst.spec, ring).expect("attachment succeeds");
            out.push((format!("seed {seed} ({}) over {ring}", inst.name), ring, report));
        }
    }
    out
}

fn ac1(reports: &[(String, CoefficientRing, Thm1Report)]) -> Result<String, String> {
    let mut h2_checked = 0;
    for (name, _, r) in reports {
        ensure(r.hypotheses.hold(), || format!("{name}: hypotheses fail"))?;
        for item in ["H_1", "H_2", "H^1"] {
            let c = r.comparison(item).unwrap();
            ensure(c.verdict == Verdict::Match, || format!("{name}: {item} {:?}", c))?;
        }
        let predicted_free = r.prediction.as_ref().unwrap().h1.is_free();
        let h2 = r.comparison("H^2").unwrap();
        if predicted_free {
            ensure(h2.verdict == Verdict::Match, || format!("{name}: H^2 {:?}", h2))?;
            h2_checked += 1;
        } else {
            ensure(h2.verdict == Verdict::NotPredicted, || format!("{name}: H^2 {:?}", h2))?;
        }
        ensure(r.generators.as_ref().is_some_and(|g| g.ok()), || {
            format!("{name}: generator certificate {:?}", r.generators)
        })?;
    }
    let z = reports.iter().filter(|(_, ring, _)| *ring == CoefficientRing::Integers).count();
    let z2 = reports.len() - z;
    ensure(z >= 25 && z2 >= 25, || format!("only {z} instances over Z and {z2} over Z/2"))?;
    Ok(format!(
        "{} instances ({z} over Z, {z2} over Z/2), H^2 compared on {h2_checked}",
        reports.len()
    ))
}

fn ac2(reports: &[(String, CoefficientRing, Thm1Report)]) -> Result<String, String> {
    for (name, _, r) in reports {
        ensure(r.euler_additive(), || {
            format!("{name}: {} + {} != {}", r.euler_host, r.euler_patch, r.euler_result)
        })?;
    }
    Ok(format!("{} surgery outputs additive", reports.len()))
}

fn ac3() -> Result<String, String> {
    let n = 4;
    let trivial = validate_branched_surface(&fixtures::tripod_bundle(n, [0, 1, 2])).map_err(|e| e.to_string())?;
    ensure(
        trivial.locus.count(CircleKind::Tripod) == 1 && trivial.locus.count(CircleKind::Collar) == 3 && trivial.normal,
        || format!("trivial bundle: {}", trivial.describe()),
    )?;
    let swap = validate_branched_surface(&fixtures::tripod_bundle(n, [1, 0, 2])).map_err(|e| e.to_string())?;
    ensure(!swap.normal, || format!("leg swap: {}", swap.describe()))?;
    let cyc = validate_branched_surface(&fixtures::tripod_bundle(n, [1, 2, 0]));
    ensure(matches!(cyc, Err(BranchError::IllegalMonodromy(_))), || format!("3-cycle: {cyc:?}"))?;
    let four = validate_branched_surface(&fixtures::edge_in_four_triangles());
    ensure(matches!(four, Err(BranchError::NotABranchedSurface(_))), || format!("edge in 4: {four:?}"))?;
    Ok("1 tripod + 3 collar; swap not normal; 3-cycle illegal; 4-fold edge rejected".into())
}

fn ac4(reports: &[(String, CoefficientRing, Thm1Report)]) -> Result<String, String> {
    let fixtures_list: Vec<(&str, SimplicialComplex)> = vec![
        ("octahedron", fixtures::octahedron()),
        ("tetrahedron", fixtures::tetrahedron()),
        ("torus", fixtures::torus7()),
        ("projective plane", fixtures::projective_plane6()),
        ("klein", fixtures::klein_bottle()),
        ("genus-2", fixtures::genus2()),
        ("tripod bundle", fixtures::tripod_bundle(4, [0, 1, 2])),
        ("twisted tripod bundle", fixtures::tripod_bundle(4, [1, 0, 2])),
        ("capped tripod bundle", fixtures::capped_tripod_bundle(4, [0, 1, 2])),
        ("annulus", fixtures::annulus(5)),
    ];
    for (name, k) in &fixtures_list {
        let ab = abelianization(&edge_path_presentation(k, 0).unwrap().presentation);
        let h1 = homology(k, CoefficientRing::Integers).degrees[1].clone();
        ensure(ab == h1, || format!("{name}: {ab:?} vs {h1:?}"))?;
    }
    for (name, _, r) in reports {
        ensure(r.pi1.abelianization_matches(), || format!("{name}: {:?}", r.pi1))?;
        ensure(r.pi1.ok(), || format!("{name}: {:?}", r.pi1))?;
    }
    let simply_connected = [
        ("octahedron", fixtures::octahedron()),
        ("tetrahedron", fixtures::tetrahedron()),
        ("subdivided octahedron", fixtures::octahedron().barycentric_subdivision()),
        ("capped tripod bundle", fixtures::capped_tripod_bundle(4, [0, 1, 2])),
    ];
    for (name, k) in simply_connected {
        let host_pres = edge_path_presentation(&k, 0).unwrap().presentation;
        let trivial = tietze_simplify(&host_pres, 10 * host_pres.relators.len());
        ensure(trivial.generators == 0, || format!("{name}: host not shown simply connected"))?;
        let host = validate_branched_surface(&k).unwrap();
        let (host, disks) = choose_bubble_disks(&host, 2);
        let r = check_thm1(&bubble_spec(&host, &disks).unwrap(), CoefficientRing::Integers).unwrap();
        let s = r.pi1.simplified.clone().ok_or_else(|| format!("{name}: no simplified presentation"))?;
        ensure(s.generators == 1 && s.relators.is_empty(), || format!("{name}: {s}"))?;
    }
    Ok(format!(
        "{} fixtures and {} surgery outputs; l = 2 bubbles simplify to < x0 | >",
        fixtures_list.len(),
        reports.len()
    ))
}

fn ac5(reports: &[(String, CoefficientRing, Thm1Report)]) -> Result<String, String> {
    let mut bridge_instances = 0;
    for (name, _, r) in reports {
        let cup = r.cup.as_ref().ok_or_else(|| format!("{name}: cup not checked"))?;
        ensure(cup.ok(), || format!("{name}: {cup:?}"))?;
        if r.l > 1 {
            bridge_instances += 1;
        }
    }
    let torus = cup_product_h1(&fixtures::torus7(), CoefficientRing::Mod2);
    ensure(!torus.is_zero(), || "torus control: cup table is zero".into())?;
    Ok(format!(
        "{} instances ({bridge_instances} with bridges) vanish; torus control nonzero",
        reports.len()
    ))
}

fn ac6() -> Result<String, String> {
    let mut rows = Vec::new();
    for (g, l, want) in [(0, 3, 2), (2, 1, 2), (1, 2, 2)] {
        for (ambient, target) in [
            (true, Orientability::Orientable),
            (true, Orientability::NonOrientable),
            (false, Orientability::NonOrientable),
        ] {
            let out = apply_heegaard(&HeegaardLedger::new(g, ambient), l, target).map_err(|e| e.to_string())?;
            ensure(out.genus_bound == want, || format!("({g},{l}) {target}: {}", out.genus_bound))?;
            let rec = out.history.last().unwrap();
            ensure(rec.target == target && rec.genus_before == g && rec.genus_after == want, || {
                format!("record {rec:?}")
            })?;
        }
        rows.push(format!("({g},{l})->{want}"));
    }
    let rejected = apply_heegaard(&HeegaardLedger::new(1, false), 2, Orientability::Orientable).is_err();
    ensure(rejected, || "orientable target after non-orientable ambient accepted".into())?;
    Ok(format!("{} for both target orientabilities", rows.join(", ")))
}

fn ac7() -> Result<String, String> {
    let surfaces = [
        ("sphere", fixtures::octahedron().barycentric_subdivision()),
        ("torus", fixtures::torus7()),
        ("torus grid", fixtures::grid_torus(5, 6)),
        ("genus-2", fixtures::genus2()),
    ];
    let mut r = rng(7);
    let mut count = 0;
    for round in 0..6 {
        for (name, k) in &surfaces {
            let values: Vec<f64> = (0..k.vertex_count()).map(|_| r.gen_range(-1000..1000) as f64 / 7.0).collect();
            let mut sorted = values.clone();
            sorted.sort_by(f64::total_cmp);
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let g = reeb_graph(k, &values).map_err(|e| e.to_string())?;
            let oracle = midlevel_reeb_graph(k, &values).map_err(|e| e.to_string())?;
            ensure(g.equivalent(&oracle), || format!("{name} round {round}: sweep and oracle differ"))?;
            if *name == "sphere" {
                ensure(reeb_betti1(&g) == 0, || format!("sphere round {round}: betti1 {}", reeb_betti1(&g)))?;
            }
            count += 1;
        }
    }
    ensure(count >= 20, || format!("only {count} functions"))?;
    let torus = reeb_graph(&fixtures::torus7(), &fixtures::torus7_heights()).map_err(|e| e.to_string())?;
    ensure(reeb_betti1(&torus) == 1, || "torus height betti1 != 1".into())?;
    let upright = reeb_graph(&fixtures::grid_torus(6, 8), &fixtures::upright_torus_heights(6, 8)).map_err(|e| e.to_string())?;
    ensure(reeb_betti1(&upright) == 1, || "upright torus betti1 != 1".into())?;
    Ok(format!("{count} random functions match the oracle; torus heights give betti1 = 1"))
}

/// Exact product in 128-bit arithmetic.
fn product(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k].checked_mul(b[k][j]).unwrap()).fold(0i128, |s, x| s.checked_add(x).unwrap()))
                .collect()
        })
        .collect()
}

fn wide(m: &Matrix<i64>) -> Vec<Vec<i128>> {
    m.to_i64_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
}

fn ac8() -> Result<String, String> {
    let mut r = rng(8);
    for trial in 0..250 {
        let rows = r.gen_range(1..=12);
        let cols = r.gen_range(1..=12);
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-9..=9)).collect()).collect();
        let m = Matrix::<i64>::from_i64_rows(cols, &data);
        let s = smith_normal_form(&m);
        let umv = product(&product(&wide(&s.u), &wide(&m)), &wide(&s.v));
        ensure(umv == wide(&s.d()), || format!("trial {trial}: U M V != D"))?;
        ensure(s.diagonal.windows(2).all(|w| w[1] % w[0] == 0), || format!("trial {trial}: {:?}", s.diagonal))?;
        ensure(s.diagonal.iter().all(|&d| d > 0), || format!("trial {trial}: {:?}", s.diagonal))?;
        ensure(s.u.determinant().abs() == 1 && s.v.determinant().abs() == 1, || {
            format!("trial {trial}: det U = {}, det V = {}", s.u.determinant(), s.v.determinant())
        })?;
    }
    Ok("250 matrices".into())
}

fn ac9() -> Result<String, String> {
    let n = 5;
    let target = fixtures::tripod_projection_target(n);
    let a = fixtures::tripod_projection(n);
    let trivial = validate_branched_surface(&fixtures::tripod_bundle(n, [0, 1, 2])).unwrap();
    let m = build_target_map(&trivial, &target, &a).map_err(|e| e.to_string())?;
    let r = validate_local_models(&m);
    ensure(r.verdict == MapVerdict::BornFromSsns, || format!("{r}"))?;
    let pats = r.tripod_patterns();
    ensure(pats.len() == n && pats.iter().all(|(_, p)| *p == (1, 2)), || format!("{pats:?}"))?;
    let twisted = validate_branched_surface(&fixtures::tripod_bundle(n, [0, 2, 1])).unwrap();
    let r = validate_local_models(&build_target_map(&twisted, &target, &a).map_err(|e| e.to_string())?);
    ensure(r.verdict == MapVerdict::LocallyBornOnly, || format!("{r}"))?;
    let oct = fixtures::octahedron();
    let folded = build_target_map(&validate_branched_surface(&oct).unwrap(), &oct, &[0, 0, 2, 3, 4, 5])
        .map_err(|e| e.to_string())?;
    let r = validate_local_models(&folded);
    ensure(matches!(r.verdict, MapVerdict::Fail(_)), || format!("{r}"))?;
    Ok(format!("(1|2) at {n} tripod vertices; twisted locally born only; fold fails"))
}

fn main() {
    let start = Instant::now();
    let reports = thm1_reports();
    println!("built {} attachment reports in {:.2}s", reports.len(), start.elapsed().as_secs_f64());
    let outcomes = vec![
        run("AC1", "homology of attachments matches the prediction", || ac1(&reports)),
        run("AC2", "Euler characteristic is additive", || ac2(&reports)),
        run("AC3", "branch-structure validation", ac3),
        run("AC4", "fundamental group consistency", || ac4(&reports)),
        run("AC5", "cup products with bridge classes vanish over Z/2", || ac5(&reports)),
        run("AC6", "Heegaard genus ledger", ac6),
        run("AC7", "Reeb sweep agrees with the midlevel oracle", ac7),
        run("AC8", "Smith normal form contract", ac8),
        run("AC9", "local-model validation", ac9),
    ];
    for o in &outcomes {
        let tag = if o.passed { "[PASS]" } else { "[FAIL]" };
        println!("{tag} {} {}: {}", o.id, o.title, o.detail);
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
