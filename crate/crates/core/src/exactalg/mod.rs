//! Exact scalars and sparse multivariate polynomials.

mod coeff;
mod gcd;
mod jacobian;
mod modp;
pub mod parse;
mod poly;
pub mod prs;
mod resultant;

pub use coeff::{
    is_prime_u64, primitive_integer_part, rat, ratio, Coeff, PrimeField, PrimeModulus, Rational, Rationals,
};
pub use jacobian::{jacobian_det, jacobian_det_wrt};
pub use parse::{default_var_names, format_poly, format_rational, parse_poly, parse_poly_with, parse_rational};
pub use poly::{Degree, Monomial, MultiPoly, QPoly};
pub use resultant::resultant;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("non-square system: {forms} forms in {vars} variables")]
    NonSquare { forms: usize, vars: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^63")]
    NotPrime(u64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
