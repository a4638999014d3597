//! Exact linear algebra over `Z`, `Z/2` and `Q` for chain complexes.

pub mod chain;
pub mod cup;
pub mod homology;
pub mod matrix;
pub mod ring;
pub mod snf;

pub use chain::{pairing, Cells, ChainComplex, ChainError, Subquotient};
pub use cup::{cup_product_h1, CupTable};
pub use homology::{
    cohomology, cohomology_direct, cycle_class, homology, induced_map_h1, CoefficientRing,
    GroupSummary, HomologyClass, HomologySummary, InducedMap,
};
pub use matrix::Matrix;
pub use ring::{Gf2, Pid};
pub use snf::{smith_normal_form, SmithForm};
