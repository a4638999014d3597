//! The line-oriented `bsc 1` text format.
//!
//! ```text
//! bsc 1
//! vertices 4
//! triangle 0 1 2
//! branch collar 0 1 2
//! function 0 0.5
//! ```
//!
//! Indices are 0-based and `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::branch::{BranchLocus, CircleKind};
use crate::complex::{ComplexError, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BscError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `bsc 1` header")]
    MissingHeader,
    #[error("missing `vertices` line")]
    MissingVertexCount,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BscDocument {
    pub complex: SimplicialComplex,
    /// Declared branch circles, in file order.
    pub branches: Vec<(CircleKind, Vec<usize>)>,
    pub function: BTreeMap<usize, f64>,
}

impl BscDocument {
    pub fn new(complex: SimplicialComplex) -> Self {
        Self {
            complex,
            branches: Vec::new(),
            function: BTreeMap::new(),
        }
    }

    pub fn with_function(mut self, values: &[f64]) -> Self {
        self.function = values.iter().copied().enumerate().collect();
        self
    }

    pub fn with_locus(mut self, locus: &BranchLocus) -> Self {
        self.branches = locus
            .circles
            .iter()
            .map(|c| (c.kind, c.vertices.clone()))
            .collect();
        self
    }

    /// Per-vertex values when every vertex has one.
    pub fn function_values(&self) -> Option<Vec<f64>> {
        (0..self.complex.vertex_count())
            .map(|v| self.function.get(&v).copied())
            .collect()
    }

    /// Whether the declared circles agree with a detected locus as sets of
    /// (kind, vertex set).
    pub fn declared_matches(&self, locus: &BranchLocus) -> bool {
        let key = |kind: CircleKind, vs: &[usize]| {
            let mut s = vs.to_vec();
            s.sort_unstable();
            (kind == CircleKind::Tripod, s)
        };
        let mut a: Vec<_> = self.branches.iter().map(|(k, v)| key(*k, v)).collect();
        let mut b: Vec<_> = locus.circles.iter().map(|c| key(c.kind, &c.vertices)).collect();
        a.sort();
        b.sort();
        a == b
    }
}

fn numbers(line: usize, parts: &[&str]) -> Result<Vec<usize>, BscError> {
    parts
        .iter()
        .map(|p| {
            p.parse::<usize>().map_err(|_| BscError::Syntax {
                line,
                message: format!("expected a vertex index, found `{p}`"),
            })
        })
        .collect()
}

pub fn parse(text: &str) -> Result<BscDocument, BscError> {
    let mut header = false;
    let mut vertex_count = None;
    let mut triangles = Vec::new();
    let mut branches = Vec::new();
    let mut function = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let parts: Vec<&str> = content.split_whitespace().collect();
        let syntax = |message: String| BscError::Syntax { line, message };
        if !header {
            if parts == ["bsc", "1"] {
                header = true;
                continue;
            }
            return Err(BscError::MissingHeader);
        }
        match parts[0] {
            "vertices" => {
                let n = numbers(line, &parts[1..])?;
                if n.len() != 1 {
                    return Err(syntax("`vertices` takes one count".into()));
                }
                vertex_count = Some(n[0]);
            }
            "triangle" => {
                let t = numbers(line, &parts[1..])?;
                if t.len() != 3 {
                    return Err(syntax("`triangle` takes three indices".into()));
                }
                triangles.push([t[0], t[1], t[2]]);
            }
            "branch" => {
                let kind = match parts.get(1) {
                    Some(&"collar") => CircleKind::Collar,
                    Some(&"tripod") => CircleKind::Tripod,
                    _ => return Err(syntax("`branch` needs `collar` or `tripod`".into())),
                };
                let vs = numbers(line, &parts[2..])?;
                if vs.len() < 3 {
                    return Err(syntax("a branch circle needs at least 3 vertices".into()));
                }
                branches.push((kind, vs));
            }
            "function" => {
                if parts.len() != 3 {
                    return Err(syntax("`function` takes a vertex and a value".into()));
                }
                let v = numbers(line, &parts[1..2])?[0];
                let x: f64 = parts[2]
                    .parse()
                    .ok()
                    .filter(|x: &f64| x.is_finite())
                    .ok_or_else(|| syntax(format!("bad value `{}`", parts[2])))?;
                function.insert(v, x);
            }
            other => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }
    if !header {
        return Err(BscError::MissingHeader);
    }
    let n = vertex_count.ok_or(BscError::MissingVertexCount)?;
    let complex = SimplicialComplex::new(n, triangles)?;
    for (_, vs) in &branches {
        if let Some(&v) = vs.iter().find(|&&v| v >= n) {
            return Err(BscError::Complex(ComplexError::IndexOutOfRange {
                index: v,
                vertex_count: n,
            }));
        }
    }
    if let Some(&v) = function.keys().find(|&&v| v >= n) {
        return Err(BscError::Complex(ComplexError::IndexOutOfRange {
            index: v,
            vertex_count: n,
        }));
    }
    Ok(BscDocument {
        complex,
        branches,
        function,
    })
}

/// Canonical text: header, vertex count, triangles in canonical order, branches,
/// function values by vertex.
pub fn write(doc: &BscDocument) -> String {
    let mut out = String::from("bsc 1\n");
    writeln!(out, "vertices {}", doc.complex.vertex_count()).unwrap();
    for t in doc.complex.triangles() {
        writeln!(out, "triangle {} {} {}", t[0], t[1], t[2]).unwrap();
    }
    for (kind, vs) in &doc.branches {
        let list: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        writeln!(out, "branch {kind} {}", list.join(" ")).unwrap();
    }
    for (v, x) in &doc.function {
        writeln!(out, "function {v} {x:?}").unwrap();
    }
    out
}

pub fn write_complex(k: &SimplicialComplex) -> String {
    write(&BscDocument::new(k.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_with_comments() {
        let text = "# tetrahedron\nbsc 1\nvertices 4\ntriangle 0 1 2 # first\ntriangle 0 1 3\n\ntriangle 0 2 3\ntriangle 1 2 3\nfunction 2 -0.5\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.complex, fixtures::tetrahedron());
        assert_eq!(doc.function.get(&2), Some(&-0.5));
        assert_eq!(doc.function_values(), None);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse("vertices 3\n"), Err(BscError::MissingHeader));
        assert!(matches!(
            parse("bsc 1\nvertices 3\ntriangle 0 1\n"),
            Err(BscError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse("bsc 1\nvertices 3\ntriangle 0 0 1\n"),
            Err(BscError::Complex(ComplexError::DegenerateTriangle(_)))
        ));
        assert_eq!(parse("bsc 1\ntriangle 0 1 2\n"), Err(BscError::MissingVertexCount));
    }

    #[test]
    fn round_trip_with_branches() {
        let k = fixtures::tripod_bundle(3, [0, 1, 2]);
        let locus = crate::branch::detect_branch_locus(&k).unwrap();
        let doc = BscDocument::new(k).with_locus(&locus).with_function(&[0.1; 12]);
        let text = write(&doc);
        let back = parse(&text).unwrap();
        assert_eq!(back, doc);
        assert!(back.declared_matches(&locus));
        assert_eq!(write(&back), text);
    }
}
