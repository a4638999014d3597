//! Attachment surgery, bubble attachment, the predicted homology of the result,
//! the computed-vs-predicted checker and the Heegaard genus ledger.

pub mod attach;
pub mod check;
pub mod heegaard;
pub mod predict;

use thiserror::Error;

use crate::branch::BranchError;

pub use attach::{
    attach_surface, bubble_attach, bubble_spec, choose_bubble_disks, disk_boundary, disks_certify,
    same_loop, star_disk, zipper_strip, AttachmentSpec, Attached, GlueDirection,
};
pub use check::{
    check_thm1, Comparison, CupCertificate, GeneratorCertificate, Hypotheses, Pi1Check, Thm1Report,
    Verdict,
};
pub use heegaard::{apply_heegaard, HeegaardLedger, HeegaardRecord, Orientability};
pub use predict::{predict_thm1, Thm1Prediction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("circle {circle} meets the branch locus at vertex {vertex}")]
    CirclesIntersectLocus { circle: usize, vertex: usize },
    #[error("circles {a} and {b} are not disjoint")]
    NotDisjoint { a: usize, b: usize },
    #[error("invalid circle: {0}")]
    InvalidCircle(String),
    #[error("{circles} circles but the patch has {boundaries} boundary components")]
    BoundaryCountMismatch { circles: usize, boundaries: usize },
    #[error("invalid gluing: {0}")]
    InvalidGluing(String),
    #[error("the number of circles must be at least 1")]
    InvalidL,
    #[error("disks {a} and {b} overlap")]
    DisksOverlap { a: usize, b: usize },
    #[error("disk {disk} touches the branch locus at vertex {vertex}")]
    DiskTouchesLocus { disk: usize, vertex: usize },
    #[error("invalid disk: {0}")]
    InvalidDisk(String),
    #[error("an orientable ambient cannot be recorded after a non-orientable one")]
    OrientabilityUnsupported,
    #[error("homology ring mismatch: {0}")]
    RingMismatch(String),
    #[error(transparent)]
    Branch(#[from] BranchError),
}
