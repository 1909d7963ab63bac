//! Monomial maps `x ↦ (∏_j x_j^{a_ij})_i` given by an integer matrix.

mod analysis;
mod matrix;

pub use analysis::{
    degree_ratio_bound_check, find_k_contraction, find_m_epsilon, gamma, inverse_degree_bound_check,
    spectral_radius, verify_norm_equivalence, DegreeRatioBound, FindM, MonomialAnalysis, SpectralRadius,
};
pub use matrix::MonomialMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonomialError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("determinant is not ±1")]
    NotUnimodular,
    #[error("exponent too large for the polynomial engine")]
    ExponentTooLarge,
    #[error("spectral radius not certified: {0}")]
    Uncertified(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
