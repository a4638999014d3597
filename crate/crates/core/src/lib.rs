//! Branched surfaces as simplicial 2-complexes: validation, exact (co)homology,
//! fundamental groups, attachment surgery, maps to surfaces and Reeb graphs.

pub mod algebra;
pub mod branch;
pub mod bsc;
pub mod complex;
pub mod fixtures;
pub mod pi1;
pub mod reeb;
pub mod surgery;
pub mod surfaces;
pub mod target_map;
pub mod union_find;

pub use complex::{ComplexError, LinkType, SimplicialComplex};
