//! Exact arithmetic substrate: rationals, polynomials, truncated power
//! series, cyclotomic field elements and a rational linear solver.

mod cyclotomic;
mod linalg;
mod poly;
mod series;

pub use cyclotomic::{cyclotomic_poly, euler_phi, CyclotomicNumber};
pub use linalg::{solve, LinearSolution};
pub use poly::QPolynomial;
pub use series::PowerSeries;

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a small rational.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("value is not rational (non-constant cyclotomic coordinate at z^{index})")]
    NotRational { index: usize },
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,
    #[error("series of orders {left} and {right} cannot be compared")]
    OrderMismatch { left: usize, right: usize },
    #[error("order {to} is not a multiple of {from}")]
    NotAMultiple { from: usize, to: usize },
    #[error("element of order {from} does not lie in the subfield of order {to}")]
    NotInSubfield { from: usize, to: usize },
}
