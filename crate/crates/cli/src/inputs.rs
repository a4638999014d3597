//! Text formats read by the CLI besides BSC: attachment specs, disk lists,
//! vertex assignments and loops.

use bsurf_core::complex::{triangle, Triangle};
use bsurf_core::surgery::GlueDirection;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub circles: Vec<Vec<usize>>,
    pub orientable: bool,
    pub genus: usize,
    pub boundaries: usize,
    pub gluing: Vec<(usize, GlueDirection)>,
}

fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn number<T: std::str::FromStr>(line: usize, word: &str) -> Result<T, String> {
    word.parse()
        .map_err(|_| format!("line {line}: expected a number, found `{word}`"))
}

fn numbers(line: usize, words: &[&str]) -> Result<Vec<usize>, String> {
    words.iter().map(|w| number(line, w)).collect()
}

/// `circle v0 v1 ...`, one `patch orientable|nonorientable g b` line, and
/// optional `glue j aligned|reversed` lines (line `i` glues patch boundary `i`).
pub fn parse_spec(text: &str) -> Result<SpecFile, String> {
    let mut circles = Vec::new();
    let mut patch = None;
    let mut gluing = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let words: Vec<&str> = content(raw).split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["circle", rest @ ..] => {
                if rest.len() < 3 {
                    return Err(format!("line {n}: a circle needs at least 3 vertices"));
                }
                circles.push(numbers(n, rest)?);
            }
            ["patch", kind, g, b] => {
                let orientable = match *kind {
                    "orientable" => true,
                    "nonorientable" | "non-orientable" => false,
                    other => return Err(format!("line {n}: unknown patch kind `{other}`")),
                };
                if patch.is_some() {
                    return Err(format!("line {n}: second `patch` line"));
                }
                patch = Some((orientable, number(n, g)?, number(n, b)?));
            }
            ["glue", j, dir] => {
                let dir = match *dir {
                    "aligned" => GlueDirection::Aligned,
                    "reversed" => GlueDirection::Reversed,
                    other => return Err(format!("line {n}: unknown direction `{other}`")),
                };
                gluing.push((number(n, j)?, dir));
            }
            [word, ..] => return Err(format!("line {n}: unknown keyword `{word}`")),
        }
    }
    let (orientable, genus, boundaries) = patch.ok_or("missing `patch` line")?;
    if gluing.is_empty() {
        gluing = (0..circles.len()).map(|j| (j, GlueDirection::Aligned)).collect();
    }
    Ok(SpecFile {
        circles,
        orientable,
        genus,
        boundaries,
        gluing,
    })
}

/// One disk per line, triangles separated by `;`, e.g. `0 1 2; 0 2 3`.
pub fn parse_disks(text: &str) -> Result<Vec<Vec<Triangle>>, String> {
    let mut disks = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let mut disk = Vec::new();
        for part in line.split(';') {
            let words: Vec<&str> = part.split_whitespace().collect();
            let vs = numbers(n, &words)?;
            match vs.as_slice() {
                [a, b, c] if a != b && b != c && a != c => disk.push(triangle(*a, *b, *c)),
                _ => return Err(format!("line {n}: `{}` is not a triangle", part.trim())),
            }
        }
        disks.push(disk);
    }
    Ok(disks)
}

/// `v <source> <target>` lines covering every source vertex exactly once.
pub fn parse_assignment(text: &str, source_vertices: usize) -> Result<Vec<usize>, String> {
    let mut out = vec![None; source_vertices];
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let words: Vec<&str> = content(raw).split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["v", s, t] => {
                let s: usize = number(n, s)?;
                let t: usize = number(n, t)?;
                let slot = out
                    .get_mut(s)
                    .ok_or_else(|| format!("line {n}: source vertex {s} out of range"))?;
                if slot.replace(t).is_some() {
                    return Err(format!("line {n}: vertex {s} assigned twice"));
                }
            }
            _ => return Err(format!("line {n}: expected `v <source> <target>`")),
        }
    }
    out.iter()
        .enumerate()
        .map(|(v, t)| t.ok_or_else(|| format!("source vertex {v} has no image")))
        .collect()
}

/// Whitespace or comma separated vertex list.
pub fn parse_loop(text: &str) -> Result<Vec<usize>, String> {
    let words: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .collect();
    let vs = numbers(1, &words)?;
    if vs.len() < 3 {
        return Err("a loop needs at least 3 vertices".into());
    }
    Ok(vs)
}
