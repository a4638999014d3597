//! Predicted (co)homology of the attached surface from that of the host.

use crate::algebra::homology::{
    universal_coefficients, CoefficientRing, GroupSummary, HomologySummary,
};
use crate::surfaces::reference_homology_closed;

use super::SurgeryError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm1Prediction {
    pub ring: CoefficientRing,
    pub h1: GroupSummary,
    pub h2: GroupSummary,
    pub coh1: GroupSummary,
    /// Only predicted when `h1` is free.
    pub coh2: Option<GroupSummary>,
}

/// `H₁ = H₁(P) ⊕ A^{l-1} ⊕ H₁(S_{C,0})`, `H₂ = H₂(P) ⊕ A`,
/// `H¹ = H¹(P) ⊕ H¹(S_{C,0}) ⊕ A^{l-1}`, and `H² = H²(P) ⊕ A` when `H₁` is free.
pub fn predict_thm1(
    host: &HomologySummary,
    l: usize,
    patch_orientable: bool,
    patch_genus: usize,
    ring: CoefficientRing,
) -> Result<Thm1Prediction, SurgeryError> {
    if l == 0 {
        return Err(SurgeryError::InvalidL);
    }
    if host.ring != ring {
        return Err(SurgeryError::RingMismatch(format!(
            "host homology over {} but prediction requested over {ring}",
            host.ring
        )));
    }
    let closed = reference_homology_closed(patch_orientable, patch_genus, ring)
        .map_err(|e| SurgeryError::InvalidGluing(e.to_string()))?;
    let bridges = GroupSummary::free(l - 1);
    let a = GroupSummary::free(1);
    let host_co = universal_coefficients(host);
    let closed_co = universal_coefficients(&closed);
    let h1 = host.degrees[1].direct_sum(&bridges).direct_sum(&closed.degrees[1]);
    let h2 = host.degrees[2].direct_sum(&a);
    let coh1 = host_co.degrees[1].direct_sum(&closed_co.degrees[1]).direct_sum(&bridges);
    let coh2 = h1.is_free().then(|| host_co.degrees[2].direct_sum(&a));
    Ok(Thm1Prediction {
        ring,
        h1,
        h2,
        coh1,
        coh2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homology::homology;
    use crate::fixtures;
    use CoefficientRing::*;

    #[test]
    fn sphere_with_annulus() {
        let h = homology(&fixtures::octahedron(), Integers);
        let p = predict_thm1(&h, 2, true, 0, Integers).unwrap();
        assert_eq!(p.h1, GroupSummary::free(1));
        assert_eq!(p.h2, GroupSummary::free(2));
        assert_eq!(p.coh2, Some(GroupSummary::free(2)));
    }

    #[test]
    fn sphere_with_torus_patch() {
        let h = homology(&fixtures::octahedron(), Integers);
        let p = predict_thm1(&h, 1, true, 1, Integers).unwrap();
        assert_eq!(p.h1, GroupSummary::free(2));
        assert_eq!(p.h2, GroupSummary::free(2));
        assert_eq!(p.coh1, GroupSummary::free(2));
    }

    #[test]
    fn klein_bottle_mod2() {
        let h = homology(&fixtures::klein_bottle(), Mod2);
        let p = predict_thm1(&h, 1, true, 0, Mod2).unwrap();
        assert_eq!(p.h1, GroupSummary::free(2));
        assert_eq!(p.h2, GroupSummary::free(2));
    }

    #[test]
    fn torsion_blocks_h2_prediction() {
        let h = homology(&fixtures::klein_bottle(), Integers);
        let p = predict_thm1(&h, 2, true, 0, Integers).unwrap();
        assert_eq!(p.h1, GroupSummary::new(2, vec![2]));
        assert_eq!(p.coh2, None);
        assert!(predict_thm1(&h, 0, true, 0, Integers).is_err());
        assert!(predict_thm1(&h, 1, true, 0, Mod2).is_err());
    }
}
