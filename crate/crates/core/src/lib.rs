//! Exact computation of loop generating functions, theta and T series,
//! and circular spectral measures of the ADE and affine ADE graphs.
//!
//! All arithmetic is exact: rationals are arbitrary precision and
//! irrational measure weights live in cyclotomic fields.

pub mod exact;
pub mod graphs;
pub mod measures;
pub mod parse;
pub mod transforms;
pub mod verify;

pub use exact::{CyclotomicNumber, PowerSeries, QPolynomial, Rational};
pub use graphs::{build_ade, FamilyTag, GraphFamily, RootedBipartiteGraph};
pub use measures::{CyclotomicMeasure, RealMeasure};
pub use parse::{parse_measure_expr, parse_xi_expr, ParseError};
pub use transforms::{theorem_2_5_lookup, XiExpression};
