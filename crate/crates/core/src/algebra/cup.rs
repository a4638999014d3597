//! Cup product `H¹ × H¹ → H²` by the Alexander–Whitney formula.

use super::chain::{Cells, ChainComplex, ChainError, Subquotient};
use super::homology::CoefficientRing;
use super::ring::{Gf2, Pid};
use crate::complex::SimplicialComplex;

/// `(α ∪ β)[v0 < v1 < v2] = α(v0 v1) · β(v1 v2)`.
pub fn cup_cochain<R: Pid>(cells: &Cells, alpha: &[R], beta: &[R]) -> Vec<R> {
    cells
        .triangles()
        .iter()
        .map(|t| {
            let a = cells.edge_position(t[0], t[1]).expect("face edge");
            let b = cells.edge_position(t[1], t[2]).expect("face edge");
            alpha[a].mul(beta[b])
        })
        .collect()
}

/// Products of the standard `H¹` generators, in `H²` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupTable {
    pub ring: CoefficientRing,
    pub h1_orders: Vec<Option<u64>>,
    pub h2_orders: Vec<Option<u64>>,
    /// `products[i][j]` = coordinates of `gᵢ ∪ gⱼ`.
    pub products: Vec<Vec<Vec<i64>>>,
}

impl CupTable {
    pub fn h1_len(&self) -> usize {
        self.h1_orders.len()
    }

    pub fn is_zero(&self) -> bool {
        self.products.iter().flatten().flatten().all(|&x| x == 0)
    }

    /// The bilinear form `(i, j) ↦ gᵢ ∪ gⱼ` when `H²` has exactly one slot.
    pub fn form(&self) -> Option<Vec<Vec<i64>>> {
        if self.h2_orders.len() != 1 {
            return None;
        }
        Some(
            self.products
                .iter()
                .map(|row| row.iter().map(|c| c[0]).collect())
                .collect(),
        )
    }
}

/// Cup products of cohomology classes given by cocycle representatives.
pub struct CupContext<R: Pid> {
    pub complex: ChainComplex<R>,
    pub h1: Subquotient<R>,
    pub h2: Subquotient<R>,
}

impl<R: Pid> CupContext<R> {
    pub fn new(k: &SimplicialComplex) -> Self {
        let complex = ChainComplex::<R>::from_complex(k);
        let h1 = complex.cohomology(1);
        let h2 = complex.cohomology(2);
        Self { complex, h1, h2 }
    }

    pub fn product(&self, alpha: &[R], beta: &[R]) -> Vec<R> {
        cup_cochain(self.complex.cells(), alpha, beta)
    }

    /// `H²` coordinates of `α ∪ β`.
    pub fn product_class(&self, alpha: &[R], beta: &[R]) -> Result<Vec<R>, ChainError> {
        self.h2.coordinates(&self.product(alpha, beta))
    }
}

fn table<R: Pid>(k: &SimplicialComplex, ring: CoefficientRing, free_only: bool) -> CupTable {
    let ctx = CupContext::<R>::new(k);
    let keep1: Vec<usize> = ctx
        .h1
        .orders()
        .iter()
        .enumerate()
        .filter(|(_, o)| !free_only || o.is_none())
        .map(|(i, _)| i)
        .collect();
    let keep2: Vec<usize> = ctx
        .h2
        .orders()
        .iter()
        .enumerate()
        .filter(|(_, o)| !free_only || o.is_none())
        .map(|(i, _)| i)
        .collect();
    let gens = ctx.h1.generators();
    let products = keep1
        .iter()
        .map(|&i| {
            keep1
                .iter()
                .map(|&j| {
                    let c = ctx
                        .product_class(&gens[i], &gens[j])
                        .expect("cup of cocycles is a cocycle");
                    keep2.iter().map(|&s| c[s].to_i64()).collect()
                })
                .collect()
        })
        .collect();
    let conv = |orders: Vec<Option<R>>, keep: &[usize]| -> Vec<Option<u64>> {
        keep.iter()
            .map(|&i| orders[i].map(|d| d.to_i64().unsigned_abs()))
            .collect()
    };
    CupTable {
        ring,
        h1_orders: conv(ctx.h1.orders(), &keep1),
        h2_orders: conv(ctx.h2.orders(), &keep2),
        products,
    }
}

/// Cup product table on the standard generators of `H¹`.
pub fn cup_product_h1(k: &SimplicialComplex, ring: CoefficientRing) -> CupTable {
    match ring {
        CoefficientRing::Integers => table::<i64>(k, ring, false),
        CoefficientRing::Mod2 => table::<Gf2>(k, ring, false),
        CoefficientRing::Rationals => table::<i64>(k, ring, true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn det2(m: &[Vec<i64>]) -> i64 {
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    #[test]
    fn torus_form_is_unimodular_and_alternating() {
        let t = cup_product_h1(&fixtures::torus7(), CoefficientRing::Integers);
        let f = t.form().unwrap();
        assert_eq!(f[0][0], 0);
        assert_eq!(f[1][1], 0);
        assert_eq!(f[0][1], -f[1][0]);
        assert_eq!(det2(&f).abs(), 1);
    }

    #[test]
    fn projective_plane_mod2_square_nonzero() {
        let t = cup_product_h1(&fixtures::projective_plane6(), CoefficientRing::Mod2);
        assert_eq!(t.form().unwrap(), vec![vec![1]]);
    }

    #[test]
    fn sphere_has_empty_table() {
        let t = cup_product_h1(&fixtures::octahedron(), CoefficientRing::Mod2);
        assert_eq!(t.h1_len(), 0);
        assert!(t.is_zero());
    }

    #[test]
    fn klein_bottle_mod2_form() {
        let t = cup_product_h1(&fixtures::klein_bottle(), CoefficientRing::Mod2);
        let f = t.form().unwrap();
        // nondegenerate mod 2, and not alternating
        assert_eq!(det2(&f).rem_euclid(2), 1);
        assert!(f[0][0] == 1 || f[1][1] == 1);
    }
}
