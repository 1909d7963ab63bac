//! Exact computation of degree sequences and dynamical degrees of rational
//! self-maps of projective space.

pub mod cli;
pub mod cyclo;
pub mod exactalg;
pub mod fabc;
pub mod gfam;
pub mod monomial;
pub mod ratmap;
pub mod roots;

pub use exactalg::{rat, ratio, MultiPoly, QPoly, Rational};
