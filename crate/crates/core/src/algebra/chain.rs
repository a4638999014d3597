//! Simplicial chain complexes and subquotients `ker / im` with explicit
//! generators and coordinates.

use std::collections::HashMap;

use thiserror::Error;

use super::matrix::Matrix;
use super::ring::Pid;
use super::snf::smith_normal_form;
use crate::complex::{edge, triangle, Edge, SimplicialComplex, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
}

/// The simplices of a (not necessarily pure) complex of dimension at most 2,
/// each list in canonical order, with index lookups.
#[derive(Debug, Clone)]
pub struct Cells {
    vertices: Vec<usize>,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    vertex_pos: HashMap<usize, usize>,
    edge_pos: HashMap<Edge, usize>,
}

impl Cells {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        Self::build(
            (0..k.vertex_count()).collect(),
            k.edges().to_vec(),
            k.triangles().to_vec(),
        )
    }

    /// Cells from explicit lists; faces of every listed simplex must be listed too.
    pub fn from_lists(
        vertices: &[usize],
        edges: &[Edge],
        triangles: &[Triangle],
    ) -> Result<Self, ChainError> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut es: Vec<Edge> = edges.iter().map(|e| edge(e[0], e[1])).collect();
        es.sort_unstable();
        es.dedup();
        let mut ts: Vec<Triangle> = triangles.iter().map(|t| triangle(t[0], t[1], t[2])).collect();
        ts.sort_unstable();
        ts.dedup();
        let cells = Self::build(vs, es, ts);
        for e in &cells.edges {
            if e[0] == e[1] {
                return Err(ChainError::NotASubcomplex(format!("degenerate edge {e:?}")));
            }
            for v in e {
                if !cells.vertex_pos.contains_key(v) {
                    return Err(ChainError::NotASubcomplex(format!("edge {e:?} lacks vertex {v}")));
                }
            }
        }
        for t in &cells.triangles {
            for f in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
                if !cells.edge_pos.contains_key(&f) {
                    return Err(ChainError::NotASubcomplex(format!(
                        "triangle {t:?} lacks edge {f:?}"
                    )));
                }
            }
        }
        Ok(cells)
    }

    fn build(vertices: Vec<usize>, edges: Vec<Edge>, triangles: Vec<Triangle>) -> Self {
        let vertex_pos = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edge_pos = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Self {
            vertices,
            edges,
            triangles,
            vertex_pos,
            edge_pos,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn count(&self, degree: usize) -> usize {
        match degree {
            0 => self.vertices.len(),
            1 => self.edges.len(),
            2 => self.triangles.len(),
            _ => 0,
        }
    }

    pub fn edge_position(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_pos.get(&edge(a, b)).copied()
    }

    pub fn vertex_position(&self, v: usize) -> Option<usize> {
        self.vertex_pos.get(&v).copied()
    }

    pub fn triangle_position(&self, t: Triangle) -> Option<usize> {
        self.triangles.binary_search(&triangle(t[0], t[1], t[2])).ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edge_pos.contains_key(&edge(e[0], e[1]))
    }

    /// 1-chain of the closed walk `loop_vertices` (last vertex joined back to the first).
    /// Edges are oriented from lower to higher vertex.
    pub fn loop_chain<R: Pid>(&self, loop_vertices: &[usize]) -> Result<Vec<R>, ChainError> {
        let mut chain = vec![R::zero(); self.edges.len()];
        let n = loop_vertices.len();
        if n < 2 {
            return Err(ChainError::NotACycle);
        }
        for i in 0..n {
            let (a, b) = (loop_vertices[i], loop_vertices[(i + 1) % n]);
            let pos = self.edge_position(a, b).ok_or(ChainError::NotACycle)?;
            let step = if a < b { R::one() } else { R::one().neg() };
            chain[pos] = chain[pos].add(step);
        }
        Ok(chain)
    }

    /// 1-chain of an open walk.
    pub fn path_chain<R: Pid>(&self, path: &[usize]) -> Result<Vec<R>, ChainError> {
        let mut chain = vec![R::zero(); self.edges.len()];
        for w in path.windows(2) {
            let pos = self.edge_position(w[0], w[1]).ok_or(ChainError::NotACycle)?;
            let step = if w[0] < w[1] { R::one() } else { R::one().neg() };
            chain[pos] = chain[pos].add(step);
        }
        Ok(chain)
    }

    /// Pushes a 1-chain on `self` into `target` through a vertex map.
    pub fn push_edge_chain<R: Pid>(
        &self,
        chain: &[R],
        vertex_map: impl Fn(usize) -> usize,
        target: &Cells,
    ) -> Result<Vec<R>, ChainError> {
        let mut out = vec![R::zero(); target.edges.len()];
        for (i, &c) in chain.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let [a, b] = self.edges[i];
            let (fa, fb) = (vertex_map(a), vertex_map(b));
            let pos = target
                .edge_position(fa, fb)
                .ok_or_else(|| ChainError::NotASubcomplex(format!("edge {fa}-{fb} missing")))?;
            let v = if fa < fb { c } else { c.neg() };
            out[pos] = out[pos].add(v);
        }
        Ok(out)
    }

    /// Pushes a 1-cochain on `target` back to `self` through a vertex map.
    pub fn pull_edge_cochain<R: Pid>(
        &self,
        cochain: &[R],
        vertex_map: impl Fn(usize) -> usize,
        target: &Cells,
    ) -> Result<Vec<R>, ChainError> {
        self.edges
            .iter()
            .map(|&[a, b]| {
                let (fa, fb) = (vertex_map(a), vertex_map(b));
                let pos = target
                    .edge_position(fa, fb)
                    .ok_or_else(|| ChainError::NotASubcomplex(format!("edge {fa}-{fb} missing")))?;
                Ok(if fa < fb { cochain[pos] } else { cochain[pos].neg() })
            })
            .collect()
    }
}

/// Boundary matrices `∂₁` (edges → vertices) and `∂₂` (triangles → edges).
#[derive(Debug, Clone)]
pub struct ChainComplex<R> {
    cells: Cells,
    d1: Matrix<R>,
    d2: Matrix<R>,
}

impl<R: Pid> ChainComplex<R> {
    pub fn new(cells: Cells) -> Self {
        let (n0, n1, n2) = (cells.count(0), cells.count(1), cells.count(2));
        let mut d1 = Matrix::zeros(n0, n1);
        for (j, e) in cells.edges.iter().enumerate() {
            d1.set(cells.vertex_pos[&e[0]], j, R::one().neg());
            d1.set(cells.vertex_pos[&e[1]], j, R::one());
        }
        let mut d2 = Matrix::zeros(n1, n2);
        for (j, t) in cells.triangles.iter().enumerate() {
            d2.set(cells.edge_pos[&[t[1], t[2]]], j, R::one());
            d2.set(cells.edge_pos[&[t[0], t[2]]], j, R::one().neg());
            d2.set(cells.edge_pos[&[t[0], t[1]]], j, R::one());
        }
        Self { cells, d1, d2 }
    }

    pub fn from_complex(k: &SimplicialComplex) -> Self {
        Self::new(Cells::from_complex(k))
    }

    pub fn cells(&self) -> &Cells {
        &self.cells
    }

    pub fn boundary1(&self) -> &Matrix<R> {
        &self.d1
    }

    pub fn boundary2(&self) -> &Matrix<R> {
        &self.d2
    }

    /// Boundary map out of degree `d` (`C_d → C_{d-1}`).
    fn boundary(&self, d: usize) -> Matrix<R> {
        match d {
            0 => Matrix::zeros(0, self.cells.count(0)),
            1 => self.d1.clone(),
            2 => self.d2.clone(),
            _ => Matrix::zeros(self.cells.count(2), 0),
        }
    }

    /// `H_d` with generators and coordinates.
    pub fn homology(&self, d: usize) -> Subquotient<R> {
        assert!(d <= 2);
        Subquotient::new(&self.boundary(d + 1), &self.boundary(d))
    }

    /// `H^d` computed from the cochain complex (transposed boundaries).
    pub fn cohomology(&self, d: usize) -> Subquotient<R> {
        assert!(d <= 2);
        let incoming = if d == 0 {
            Matrix::zeros(self.cells.count(0), 0)
        } else {
            self.boundary(d).transpose()
        };
        let outgoing = if d == 2 {
            Matrix::zeros(0, self.cells.count(2))
        } else {
            self.boundary(d + 1).transpose()
        };
        Subquotient::new(&incoming, &outgoing)
    }
}

/// `ker(outgoing) / im(incoming)` for maps `incoming: A → C` and `outgoing: C → B`
/// with `outgoing ∘ incoming = 0`.
///
/// The quotient is presented by slots: torsion slots (cyclic of order `d`) first,
/// then free slots. [`Subquotient::generators`] and [`Subquotient::coordinates`]
/// are mutually consistent in this slot order.
#[derive(Debug, Clone)]
pub struct Subquotient<R> {
    outgoing: Matrix<R>,
    kernel: Matrix<R>,
    kernel_coords: Matrix<R>,
    u: Matrix<R>,
    u_inv: Matrix<R>,
    // (index into the SNF basis, order if torsion)
    slots: Vec<(usize, Option<R>)>,
}

impl<R: Pid> Subquotient<R> {
    pub fn new(incoming: &Matrix<R>, outgoing: &Matrix<R>) -> Self {
        let n = outgoing.cols();
        assert_eq!(incoming.rows(), n, "incoming/outgoing dimension mismatch");
        let out_snf = smith_normal_form(outgoing);
        let r = out_snf.rank();
        let kernel = out_snf.v.col_block(r, n);
        let kernel_coords = out_snf.v_inv.row_block(r, n);
        let m = kernel_coords.mul(incoming);
        let snf = smith_normal_form(&m);
        let k = n - r;
        let mut slots = Vec::new();
        for (i, &d) in snf.diagonal.iter().enumerate() {
            if !d.is_unit() {
                slots.push((i, Some(d)));
            }
        }
        for i in snf.rank()..k {
            slots.push((i, None));
        }
        Self {
            outgoing: outgoing.clone(),
            kernel,
            kernel_coords,
            u: snf.u,
            u_inv: snf.u_inv,
            slots,
        }
    }

    /// Number of slots (minimal number of generators).
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.slots.iter().filter(|s| s.1.is_none()).count()
    }

    /// Orders of the torsion slots, forming a divisibility chain.
    pub fn torsion(&self) -> Vec<R> {
        self.slots.iter().filter_map(|s| s.1).collect()
    }

    /// Order of each slot; `None` for free slots.
    pub fn orders(&self) -> Vec<Option<R>> {
        self.slots.iter().map(|s| s.1).collect()
    }

    /// One representative (co)cycle per slot.
    pub fn generators(&self) -> Vec<Vec<R>> {
        self.slots
            .iter()
            .map(|&(i, _)| {
                let col = self.u_inv.column(i);
                self.kernel.mul_vec(&col)
            })
            .collect()
    }

    pub fn is_cycle(&self, z: &[R]) -> bool {
        z.len() == self.outgoing.cols() && self.outgoing.mul_vec(z).iter().all(|x| x.is_zero())
    }

    /// Coordinates of the class of `z` in slot order; torsion coordinates are reduced.
    pub fn coordinates(&self, z: &[R]) -> Result<Vec<R>, ChainError> {
        if z.len() != self.outgoing.cols() {
            return Err(ChainError::WrongLength {
                expected: self.outgoing.cols(),
                got: z.len(),
            });
        }
        if !self.is_cycle(z) {
            return Err(ChainError::NotACycle);
        }
        let x = self.kernel_coords.mul_vec(z);
        let y = self.u.mul_vec(&x);
        Ok(self
            .slots
            .iter()
            .map(|&(i, order)| match order {
                Some(d) => y[i].reduce_mod(d),
                None => y[i],
            })
            .collect())
    }

    pub fn is_zero_class(&self, z: &[R]) -> Result<bool, ChainError> {
        Ok(self.coordinates(z)?.iter().all(|c| c.is_zero()))
    }
}

/// Evaluation of a cochain on a chain.
pub fn pairing<R: Pid>(cochain: &[R], chain: &[R]) -> R {
    cochain
        .iter()
        .zip(chain)
        .fold(R::zero(), |acc, (&a, &b)| acc.add(a.mul(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Gf2;
    use crate::fixtures;

    #[test]
    fn boundary_of_boundary_vanishes() {
        for k in [fixtures::octahedron(), fixtures::torus7(), fixtures::tripod_bundle(4, [0, 2, 1])] {
            let cc = ChainComplex::<i64>::from_complex(&k);
            assert!(cc.boundary1().mul(cc.boundary2()).is_zero());
        }
    }

    #[test]
    fn torus_homology_slots() {
        let cc = ChainComplex::<i64>::from_complex(&fixtures::torus7());
        let h1 = cc.homology(1);
        assert_eq!(h1.free_rank(), 2);
        assert!(h1.torsion().is_empty());
        let gens = h1.generators();
        for (i, g) in gens.iter().enumerate() {
            let coords = h1.coordinates(g).unwrap();
            let expect: Vec<i64> = (0..2).map(|j| i64::from(i == j)).collect();
            assert_eq!(coords, expect);
        }
    }

    #[test]
    fn projective_plane_torsion_generator() {
        let cc = ChainComplex::<i64>::from_complex(&fixtures::projective_plane6());
        let h1 = cc.homology(1);
        assert_eq!(h1.orders(), vec![Some(2)]);
        let g = &h1.generators()[0];
        let twice: Vec<i64> = g.iter().map(|x| 2 * x).collect();
        assert!(h1.is_zero_class(&twice).unwrap());
        assert!(!h1.is_zero_class(g).unwrap());
    }

    #[test]
    fn not_a_cycle() {
        let cc = ChainComplex::<Gf2>::from_complex(&fixtures::octahedron());
        let mut z = vec![Gf2::zero(); cc.cells().count(1)];
        z[0] = Gf2::one();
        assert_eq!(cc.homology(1).coordinates(&z), Err(ChainError::NotACycle));
    }

    #[test]
    fn subcomplex_validation() {
        let err = Cells::from_lists(&[0, 1], &[[0, 1]], &[[0, 1, 2]]);
        assert!(matches!(err, Err(ChainError::NotASubcomplex(_))));
        assert!(Cells::from_lists(&[0, 1, 2], &[[0, 1], [1, 2], [0, 2]], &[]).is_ok());
    }
}
