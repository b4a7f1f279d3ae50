use crate::exact::PowerSeries;
use crate::graphs::{build_ade, GraphFamily};

use super::{
    poincare_series, t_from_theta, theta_from_poincare_subst, Normalizer, TransformError,
    XiExpression, XiFactor,
};

fn m(n: usize) -> XiFactor {
    XiFactor::minus(n as u32)
}

fn p(n: usize) -> XiFactor {
    XiFactor::plus(n as u32)
}

/// Closed-form T series of each ADE diagram as a ξ expression.
///
/// Indexing follows the diagrams: `A(v)` has `v = n - 1` vertices,
/// `D(v)` has `v = n + 1`, `Atilde(2n)` has `2n`, `Dtilde(n + 2)`.
pub fn theorem_2_5_lookup(family: GraphFamily) -> Result<XiExpression, TransformError> {
    let unsupported = || TransformError::UnsupportedFamily(family);
    let (num, den, norm) = match family {
        GraphFamily::A(v) if v >= 2 => {
            let n = v + 1;
            (vec![m(n - 1)], vec![m(n)], Normalizer::None)
        }
        GraphFamily::D(v) if v >= 3 => {
            let n = v - 1;
            (vec![p(n - 1)], vec![p(n)], Normalizer::None)
        }
        GraphFamily::Atilde(v) if v >= 2 && v % 2 == 0 => {
            let n = v / 2;
            (vec![p(n)], vec![m(n)], Normalizer::Prime)
        }
        GraphFamily::Dtilde(v) if v >= 4 => {
            let n = v - 2;
            (vec![p(n + 1)], vec![m(n)], Normalizer::DoublePrime)
        }
        GraphFamily::E6 => (vec![m(8)], vec![m(3), p(6)], Normalizer::None),
        GraphFamily::E7 => (vec![m(12)], vec![m(4), p(9)], Normalizer::None),
        GraphFamily::E8 => (vec![p(5), p(9)], vec![p(15)], Normalizer::None),
        GraphFamily::E6tilde => (vec![p(6)], vec![m(3), m(4)], Normalizer::None),
        GraphFamily::E7tilde => (vec![p(9)], vec![m(4), m(6)], Normalizer::None),
        GraphFamily::E8tilde => (vec![p(15)], vec![m(6), m(10)], Normalizer::None),
        _ => return Err(unsupported()),
    };
    XiExpression::new(num, den, norm)
}

/// Loop counts → Poincaré → Θ → T for the family's diagram.
pub fn graph_t_series(family: GraphFamily, order: usize) -> Result<PowerSeries, TransformError> {
    let g = build_ade(family)?;
    let f = poincare_series(&g.loop_counts(order));
    Ok(t_from_theta(&theta_from_poincare_subst(&f, order)))
}
