//! Poincaré, theta and T series, and the ξ calculus of cyclotomic
//! rational functions.

mod table;
mod theta;
mod xi;

pub use table::{graph_t_series, theorem_2_5_lookup};
pub use theta::{
    theta_coefficient_sum, poincare_series, t_closed_form, t_from_theta, theta_from_poincare_formula,
    theta_from_poincare_subst, ClosedFormVariant,
};
pub use xi::{Normalizer, XiExpression, XiFactor};

use thiserror::Error;

use crate::graphs::{GraphError, GraphFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("polynomial degree {degree} must be smaller than n = {n}")]
    DegreeTooLarge { degree: usize, n: usize },
    #[error("polynomial must have constant term 1")]
    ConstantTermNotOne,
    #[error("no closed form is tabulated for {0}")]
    UnsupportedFamily(GraphFamily),
    #[error("ξ factors need a positive exponent")]
    ZeroExponent,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
