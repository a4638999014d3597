//! Edge-path presentations of the fundamental group, abelianization and a small
//! Tietze simplifier.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::algebra::homology::GroupSummary;
use crate::algebra::matrix::Matrix;
use crate::algebra::snf::smith_normal_form;
use crate::complex::{Edge, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pi1Error {
    #[error("complex is not connected")]
    NotConnected,
    #[error("basepoint {0} out of range")]
    BasepointOutOfRange(usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
}

/// Letter `+(g+1)` is generator `g`, `-(g+1)` its inverse.
pub type Word = Vec<i64>;

fn gen_of(letter: i64) -> usize {
    (letter.unsigned_abs() - 1) as usize
}

fn letter(generator: usize, positive: bool) -> i64 {
    let l = generator as i64 + 1;
    if positive {
        l
    } else {
        -l
    }
}

fn invert(w: &[i64]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

fn free_reduce(w: &[i64]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[i64]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Self {
        for r in &relators {
            for &l in r {
                assert!(l != 0 && gen_of(l) < generators, "letter {l} out of range");
            }
        }
        Self {
            generators,
            relators,
        }
    }

    /// True for `⟨x₁, …, x_k | ⟩`.
    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.generators).map(|g| format!("x{g}")).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                if r.is_empty() {
                    return "1".to_string();
                }
                r.iter()
                    .map(|&l| {
                        if l > 0 {
                            format!("x{}", gen_of(l))
                        } else {
                            format!("x{}^-1", gen_of(l))
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// Edge-path group of a connected complex with the data needed to read loops as words.
#[derive(Debug, Clone)]
pub struct EdgePathGroup {
    pub basepoint: usize,
    pub presentation: GroupPresentation,
    /// Edge carrying each generator, oriented low → high.
    pub generator_edges: Vec<Edge>,
    generator_of_edge: Vec<Option<usize>>,
    complex: SimplicialComplex,
}

impl EdgePathGroup {
    /// Word of a closed edge walk (last vertex joined back to the first).
    pub fn loop_word(&self, cycle: &[usize]) -> Result<Word, Pi1Error> {
        let n = cycle.len();
        let mut w = Vec::new();
        for i in 0..n {
            let (a, b) = (cycle[i], cycle[(i + 1) % n]);
            let e = self.complex.edge_index(a, b).ok_or(Pi1Error::NotAnEdge(a, b))?;
            if let Some(g) = self.generator_of_edge[e] {
                w.push(letter(g, a < b));
            }
        }
        Ok(free_reduce(&w))
    }
}

/// Spanning tree by BFS from `basepoint` (neighbors in increasing order); one
/// generator per non-tree edge, one relator per triangle.
pub fn edge_path_presentation(
    k: &SimplicialComplex,
    basepoint: usize,
) -> Result<EdgePathGroup, Pi1Error> {
    if basepoint >= k.vertex_count() {
        return Err(Pi1Error::BasepointOutOfRange(basepoint));
    }
    if !k.is_connected() {
        return Err(Pi1Error::NotConnected);
    }
    let mut in_tree = vec![false; k.edges().len()];
    let mut seen = vec![false; k.vertex_count()];
    seen[basepoint] = true;
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for w in k.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                in_tree[k.edge_index(v, w).unwrap()] = true;
                queue.push_back(w);
            }
        }
    }
    let mut generator_of_edge = vec![None; k.edges().len()];
    let mut generator_edges = Vec::new();
    for (i, e) in k.edges().iter().enumerate() {
        if !in_tree[i] {
            generator_of_edge[i] = Some(generator_edges.len());
            generator_edges.push(*e);
        }
    }
    let mut group = EdgePathGroup {
        basepoint,
        presentation: GroupPresentation::default(),
        generator_edges,
        generator_of_edge,
        complex: k.clone(),
    };
    let relators = k
        .triangles()
        .iter()
        .map(|t| group.loop_word(t).expect("triangle edges exist"))
        .collect();
    group.presentation = GroupPresentation::new(group.generator_edges.len(), relators);
    Ok(group)
}

/// `G / [G, G]` as free rank plus invariant factors.
pub fn abelianization(p: &GroupPresentation) -> GroupSummary {
    let rows: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i64; p.generators];
            for &l in r {
                row[gen_of(l)] += l.signum();
            }
            row
        })
        .collect();
    let m = Matrix::<i64>::from_i64_rows(p.generators, &rows);
    let snf = smith_normal_form(&m);
    GroupSummary::new(
        p.generators - snf.rank(),
        snf.diagonal.iter().filter(|d| **d != 1).map(|d| *d as u64).collect(),
    )
}

/// Applies free and cyclic reduction, drops trivial and repeated relators, and
/// eliminates generators occurring exactly once in some relator (shortest relator
/// first). At most `step_budget` eliminations are performed.
pub fn tietze_simplify(p: &GroupPresentation, step_budget: usize) -> GroupPresentation {
    let mut gens = p.generators;
    let mut rels: Vec<Word> = p.relators.clone();
    let mut budget = step_budget;
    loop {
        let mut cleaned: Vec<Word> = Vec::new();
        for r in &rels {
            let r = cyclic_reduce(r);
            if !r.is_empty() && !cleaned.contains(&r) {
                cleaned.push(r);
            }
        }
        rels = cleaned;
        if budget == 0 {
            break;
        }
        let mut order: Vec<usize> = (0..rels.len()).collect();
        order.sort_by_key(|&i| (rels[i].len(), i));
        let found = order.into_iter().find_map(|i| {
            let r = &rels[i];
            (0..gens).find_map(|g| {
                let hits: Vec<usize> = (0..r.len()).filter(|&j| gen_of(r[j]) == g).collect();
                (hits.len() == 1).then(|| (i, g, hits[0]))
            })
        });
        let Some((ri, g, pos)) = found else {
            break;
        };
        let r = rels.remove(ri);
        // r rotated to x^e w, so x^e = w^-1
        let mut w: Word = r[pos + 1..].to_vec();
        w.extend_from_slice(&r[..pos]);
        let positive = r[pos] > 0;
        let value = if positive { invert(&w) } else { w };
        let value_inv = invert(&value);
        let renumber = |l: i64| -> i64 {
            let h = gen_of(l);
            let h = if h > g { h - 1 } else { h };
            letter(h, l > 0)
        };
        rels = rels
            .iter()
            .map(|rel| {
                let mut out = Vec::new();
                for &l in rel {
                    if gen_of(l) == g {
                        out.extend(if l > 0 { &value } else { &value_inv }.iter().map(|&m| renumber(m)));
                    } else {
                        out.push(renumber(l));
                    }
                }
                out
            })
            .collect();
        gens -= 1;
        budget -= 1;
    }
    GroupPresentation {
        generators: gens,
        relators: rels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homology::{homology, CoefficientRing};
    use crate::fixtures;

    fn p(gens: usize, rels: &[&[i64]]) -> GroupPresentation {
        GroupPresentation::new(gens, rels.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(abelianization(&p(2, &[&[1, 2, -1, -2]])), GroupSummary::free(2));
        assert_eq!(abelianization(&p(1, &[&[1, 1]])), GroupSummary::new(0, vec![2]));
        assert_eq!(abelianization(&p(2, &[])), GroupSummary::free(2));
    }

    #[test]
    fn tietze_examples() {
        assert_eq!(tietze_simplify(&p(2, &[&[2]]), 5), p(1, &[]));
        assert_eq!(tietze_simplify(&p(1, &[]), 5), p(1, &[]));
        let s = tietze_simplify(&p(2, &[&[1, 2, -1, -2]]), 5);
        assert_eq!(s.generators, 2);
        assert_eq!(s.relators.len(), 1);
    }

    #[test]
    fn octahedron_is_simply_connected() {
        let k = fixtures::octahedron();
        let g = edge_path_presentation(&k, 0).unwrap();
        let pres = &g.presentation;
        assert_eq!(pres.generators, k.edges().len() - (k.vertex_count() - 1));
        assert_eq!(abelianization(pres), GroupSummary::zero());
        let s = tietze_simplify(pres, 10 * pres.relators.len());
        assert_eq!(s, GroupPresentation::default());
    }

    #[test]
    fn abelianization_matches_homology_on_fixtures() {
        for k in [
            fixtures::torus7(),
            fixtures::projective_plane6(),
            fixtures::klein_bottle(),
            fixtures::genus2(),
            fixtures::tripod_bundle(3, [1, 0, 2]),
        ] {
            let g = edge_path_presentation(&k, 0).unwrap();
            let h1 = homology(&k, CoefficientRing::Integers).degrees[1].clone();
            assert_eq!(abelianization(&g.presentation), h1);
            let s = tietze_simplify(&g.presentation, 100);
            assert_eq!(abelianization(&s), h1);
        }
    }

    #[test]
    fn loop_words() {
        let torus = fixtures::torus7();
        let g = edge_path_presentation(&torus, 0).unwrap();
        let w = g.loop_word(&[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert!(!w.is_empty());
        assert!(g.loop_word(&[0, 1, 3]).unwrap().len() <= 3);
        assert_eq!(g.loop_word(&[0, 0]), Err(Pi1Error::NotAnEdge(0, 0)));
    }

    #[test]
    fn disconnected_rejected() {
        let two = fixtures::octahedron().disjoint_union(&fixtures::octahedron());
        assert_eq!(edge_path_presentation(&two, 0).unwrap_err(), Pi1Error::NotConnected);
    }
}
