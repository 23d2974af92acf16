//! Symbolic machinery for Leibniz triple systems: the Kolesnikov-Pozhidaev
//! transformation of identities, exact consequence checking for multilinear
//! identities, normal forms in free Leibniz and free right-commutative
//! algebras, and universal Leibniz envelopes of finite-dimensional systems.

pub mod algebra;
pub mod consequence;
mod error;
pub mod fixtures;
pub mod free_leibniz;
pub mod kp;
pub mod linalg;
pub mod mpoly;
pub mod replay;
pub mod rightcomm;
pub mod systems;

pub use error::{Error, Result};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from an integer numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
