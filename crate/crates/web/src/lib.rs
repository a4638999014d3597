//! Browser bindings: surface summaries, bubble attachment reports and Reeb graph
//! drawings for BSC text or built-in fixtures.

use std::fmt::Write as _;

use bsurf_core::algebra::{homology, CoefficientRing};
use bsurf_core::branch::validate_branched_surface;
use bsurf_core::bsc;
use bsurf_core::fixtures;
use bsurf_core::pi1::{abelianization, edge_path_presentation, tietze_simplify};
use bsurf_core::reeb::{reeb_betti1, reeb_graph};
use bsurf_core::surgery::{bubble_spec, check_thm1, choose_bubble_disks};
use bsurf_core::SimplicialComplex;
use wasm_bindgen::prelude::*;

pub const FIXTURES: [&str; 7] = ["octahedron", "torus", "klein", "projective", "genus2", "tripod", "grid-torus"];

fn fixture(name: &str) -> Result<(SimplicialComplex, Option<Vec<f64>>), String> {
    Ok(match name {
        "octahedron" => (fixtures::octahedron(), Some(fixtures::octahedron_heights())),
        "torus" => (fixtures::torus7(), Some(fixtures::torus7_heights())),
        "klein" => (fixtures::klein_bottle(), None),
        "projective" => (fixtures::projective_plane6(), None),
        "genus2" => (fixtures::genus2(), None),
        "tripod" => (fixtures::capped_tripod_bundle(4, [0, 1, 2]), None),
        "grid-torus" => (fixtures::grid_torus(6, 4), Some(fixtures::upright_torus_heights(6, 4))),
        other => return Err(format!("unknown fixture `{other}`")),
    })
}

pub fn fixture_text(name: &str) -> Result<String, String> {
    let (k, values) = fixture(name)?;
    let mut doc = bsc::BscDocument::new(k);
    if let Some(v) = values {
        doc = doc.with_function(&v);
    }
    Ok(bsc::write(&doc))
}

fn parse(text: &str) -> Result<bsc::BscDocument, String> {
    bsc::parse(text).map_err(|e| e.to_string())
}

pub fn summary(text: &str) -> Result<String, String> {
    let doc = parse(text)?;
    let k = &doc.complex;
    let mut out = String::new();
    writeln!(
        out,
        "{} vertices, {} edges, {} triangles, euler characteristic {}",
        k.vertex_count(),
        k.edges().len(),
        k.triangles().len(),
        k.euler_characteristic()
    )
    .unwrap();
    match validate_branched_surface(k) {
        Ok(b) => {
            writeln!(out, "{}", b.describe()).unwrap();
            for c in &b.locus.circles {
                let m = c.monodromy.map_or(String::new(), |m| format!(", monodromy {m}"));
                writeln!(out, "  {} circle of length {}{m}", c.kind, c.vertices.len()).unwrap();
            }
        }
        Err(e) => writeln!(out, "{e}").unwrap(),
    }
    for ring in [CoefficientRing::Integers, CoefficientRing::Mod2] {
        writeln!(out, "homology {}", homology(k, ring)).unwrap();
    }
    if k.is_connected() {
        let g = edge_path_presentation(k, 0).map_err(|e| e.to_string())?;
        let p = tietze_simplify(&g.presentation, 10_000);
        writeln!(out, "pi1 {p}").unwrap();
        writeln!(out, "abelianization {}", abelianization(&p).display(CoefficientRing::Integers)).unwrap();
    }
    Ok(out)
}

pub fn bubble(text: &str, l: usize, coeff: &str) -> Result<String, String> {
    let ring: CoefficientRing = coeff.parse()?;
    if l == 0 || l > 6 {
        return Err("choose between 1 and 6 disks".into());
    }
    let doc = parse(text)?;
    let host = validate_branched_surface(&doc.complex).map_err(|e| e.to_string())?;
    let (host, disks) = choose_bubble_disks(&host, l);
    let spec = bubble_spec(&host, &disks).map_err(|e| e.to_string())?;
    let report = check_thm1(&spec, ring).map_err(|e| e.to_string())?;
    Ok(report.to_string())
}

pub fn reeb_drawing(text: &str) -> Result<String, String> {
    let doc = parse(text)?;
    let values = doc
        .function_values()
        .ok_or("every vertex needs a `function` line")?;
    let g = reeb_graph(&doc.complex, &values).map_err(|e| e.to_string())?;
    let g = g.suppress_regular();
    let (w, h, pad) = (360.0, 420.0, 24.0);
    let lo = g.nodes.iter().map(|n| n.value).fold(f64::INFINITY, f64::min);
    let hi = g.nodes.iter().map(|n| n.value).fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let y = |v: f64| h - pad - (v - lo) / span * (h - 2.0 * pad);

    let mut order: Vec<usize> = (0..g.nodes.len()).collect();
    order.sort_by(|&a, &b| g.nodes[a].value.total_cmp(&g.nodes[b].value));
    let mut x = vec![0.0; g.nodes.len()];
    let mut lanes: Vec<(usize, f64)> = Vec::new();
    let mut fresh = 0.0;
    for &n in &order {
        let below: Vec<f64> = lanes.iter().filter(|(e, _)| g.edges[*e].upper == n).map(|l| l.1).collect();
        lanes.retain(|(e, _)| g.edges[*e].upper != n);
        x[n] = if below.is_empty() {
            fresh += 1.0;
            fresh
        } else {
            below.iter().sum::<f64>() / below.len() as f64
        };
        let up: Vec<usize> = (0..g.edges.len()).filter(|&e| g.edges[e].lower == n).collect();
        let k = up.len() as f64;
        for (i, e) in up.into_iter().enumerate() {
            lanes.push((e, x[n] + (i as f64 - (k - 1.0) / 2.0) * 0.8));
        }
    }
    let (xmin, xmax) = x.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let xs = if xmax > xmin { (w - 2.0 * pad) / (xmax - xmin) } else { 0.0 };
    let px = |v: f64| if xs == 0.0 { w / 2.0 } else { pad + (v - xmin) * xs };

    let mut svg = format!(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#);
    for e in &g.edges {
        let (a, b) = (e.lower, e.upper);
        write!(
            svg,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#334" stroke-width="2"/>"##,
            px(x[a]),
            y(g.nodes[a].value),
            px(x[b]),
            y(g.nodes[b].value)
        )
        .unwrap();
    }
    for (i, n) in g.nodes.iter().enumerate() {
        let fill = match (n.lower, n.upper) {
            (0, _) => "#2a7",
            (_, 0) => "#c42",
            _ => "#d90",
        };
        write!(
            svg,
            r#"<circle cx="{:.1}" cy="{:.1}" r="5" fill="{fill}"><title>vertex {} value {}</title></circle>"#,
            px(x[i]),
            y(n.value),
            n.vertex,
            n.value
        )
        .unwrap();
    }
    write!(
        svg,
        r##"<text x="8" y="16" font-size="12" fill="#334">{} nodes, {} arcs, betti1 {}</text></svg>"##,
        g.nodes.len(),
        g.edges.len(),
        reeb_betti1(&g)
    )
    .unwrap();
    Ok(svg)
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fixture_names() -> String {
    FIXTURES.join(",")
}

#[wasm_bindgen]
pub fn fixture_bsc(name: &str) -> Result<String, JsValue> {
    js(fixture_text(name))
}

#[wasm_bindgen]
pub fn surface_summary(bsc_text: &str) -> Result<String, JsValue> {
    js(summary(bsc_text))
}

#[wasm_bindgen]
pub fn bubble_report(bsc_text: &str, disks: usize, coeff: &str) -> Result<String, JsValue> {
    js(bubble(bsc_text, disks, coeff))
}

#[wasm_bindgen]
pub fn reeb_svg(bsc_text: &str) -> Result<String, JsValue> {
    js(reeb_drawing(bsc_text))
}
