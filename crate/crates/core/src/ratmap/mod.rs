//! Projective rational maps: normalization, composition, iteration,
//! degree sequences and orbits.

mod degseq;
mod indet;
mod map;
mod point;

pub use degseq::{
    degree_sequence, dyndeg_estimate, is_algebraically_stable_up_to, DegreeSequence, DynDegEstimate, ResourceCaps,
    Stability, Truncation,
};
pub use map::{cancel_common_factor, MapDocument, ProjectiveMap};
pub use point::{ApplyOutcome, Orbit, OrbitEnd, ProjectivePoint};

use crate::exactalg::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("coordinate {0} is not homogeneous")]
    Inhomogeneous(usize),
    #[error("coordinates have different degrees ({0} and {1})")]
    DegreeMismatch(u64, u64),
    #[error("all coordinates are zero")]
    AllZero,
    #[error("all point coordinates are zero")]
    ZeroPoint,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
