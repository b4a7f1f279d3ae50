//! Circular measures on roots of unity: construction, moments, T series,
//! the real pushforward and expansions in uniform measures.

mod candidates;
mod expansion;
mod measure;
mod real;

pub use candidates::{candidate_formula, candidate_measure, etilde_level1_form, CandidateSource};
pub use expansion::{
    cyclotomic_expansion, expand_at_level, level, BasicTerm, ExpansionResult, LevelResult,
};
pub use measure::{
    basic_measure, density_measure, lincomb, measure_equal, moment, named_measure,
    t_series_of_measure, BaseMeasure, CyclotomicMeasure, Density,
};
pub use real::{pushforward_real, RealAtom, RealMeasure};

use thiserror::Error;

use crate::exact::ExactError;
use crate::graphs::GraphFamily;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("support order {0} is not a positive even number")]
    OddOrder(usize),
    #[error("weight at z^{exponent} breaks the symmetry q -> 1/q, q -> -q")]
    SymmetryViolation { exponent: usize },
    #[error("weight at z^{exponent} is not real")]
    NotReal { exponent: usize },
    #[error("cannot lift a measure on the {from}-th roots to the {to}-th roots")]
    NotAMultiple { from: usize, to: usize },
    #[error("moment {moment} is not rational")]
    NotRational { moment: usize },
    #[error("measure is not supported on the {}-th roots of unity", 2 * .n)]
    SupportTooLarge { n: usize },
    #[error("measure has no symmetric numerator at n = {n}")]
    AsymmetricR { n: usize },
    #[error("no candidate measure for {0}")]
    UnsupportedFamily(GraphFamily),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
