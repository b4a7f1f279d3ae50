use crate::exact::Rational;
use crate::graphs::GraphFamily;
use crate::parse::parse_measure_expr;

use super::{CyclotomicMeasure, MeasureError};

/// Which published list of circular measures to build from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CandidateSource {
    /// Binary expansion: `d_n` and `d'_n` only.
    Binary,
    /// Ternary expansion: adds `d''_n` and `d'''_n` for the E graphs.
    Ternary,
}

/// Measure-expression text of the circular measure of `family`.
pub fn candidate_formula(
    family: GraphFamily,
    source: CandidateSource,
) -> Result<String, MeasureError> {
    let unsupported = || MeasureError::UnsupportedFamily(family);
    Ok(match family {
        GraphFamily::A(v) if v >= 2 => format!("alpha_{}", v + 1),
        GraphFamily::Atilde(v) if v >= 2 && v % 2 == 0 => format!("d_{}", v / 2),
        GraphFamily::D(v) if v >= 3 => format!("alpha'_{}", v - 1),
        GraphFamily::Dtilde(v) if v >= 4 => format!("(d_{} + d'_1)/2", v - 2),
        GraphFamily::E6 => match source {
            CandidateSource::Binary => "alpha_12 + (d_12 - d_6 - d_4 + d_3)/2".into(),
            CandidateSource::Ternary => "(d''_2 + 2*alpha''_2 + 3*d'''_1)/6".into(),
        },
        GraphFamily::E7 => match source {
            CandidateSource::Binary => "beta'_9 + (d'_1 - d'_3)/2".into(),
            CandidateSource::Ternary => "(2*beta''_3 + d'_1)/3".into(),
        },
        GraphFamily::E8 => match source {
            CandidateSource::Binary => "alpha'_15 + gamma'_15 - (d'_5 + d'_3)/2".into(),
            CandidateSource::Ternary => "(2*alpha''_5 + 2*gamma''_5 - d''_1)/3".into(),
        },
        GraphFamily::E6tilde | GraphFamily::E7tilde | GraphFamily::E8tilde => {
            let l = etilde_l(family);
            match source {
                CandidateSource::Binary => {
                    let n = etilde_n(family);
                    format!("(d_{n} + d_3 + d_2 - d_1)/2")
                }
                CandidateSource::Ternary => {
                    format!("alpha_{} + (d_{l} - d_{})/2", l + 1, l + 1)
                }
            }
        }
        _ => return Err(unsupported()),
    })
}

fn etilde_l(family: GraphFamily) -> usize {
    match family {
        GraphFamily::E6tilde => 2,
        GraphFamily::E7tilde => 3,
        _ => 5,
    }
}

fn etilde_n(family: GraphFamily) -> usize {
    match family {
        GraphFamily::E6tilde => 3,
        GraphFamily::E7tilde => 4,
        _ => 5,
    }
}

/// Circular measure of an ADE graph.
///
/// Both sources agree on the A and D families. For the affine E graphs
/// the ternary source is the level 1 form `α_{l+1} + (d_l - d_{l+1})/2`;
/// see [`etilde_level1_form`] for other constants.
pub fn candidate_measure(
    family: GraphFamily,
    source: CandidateSource,
) -> Result<CyclotomicMeasure, MeasureError> {
    let text = candidate_formula(family, source)?;
    Ok(parse_measure_expr(&text).expect("built-in formulas are well formed"))
}

/// `α_{l+1} + (d_l - d_{l+1}) · constant`.
pub fn etilde_level1_form(l: usize, constant: &Rational) -> CyclotomicMeasure {
    let alpha = parse_measure_expr(&format!("alpha_{}", l + 1)).unwrap();
    let diff = parse_measure_expr(&format!("d_{l} - d_{}", l + 1)).unwrap();
    super::lincomb(&[(Rational::from_integer(1.into()), alpha), (constant.clone(), diff)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::graphs::FamilyTag;
    use crate::transforms::graph_t_series;

    #[test]
    fn small_families_match_graph_t() {
        for family in [
            GraphFamily::A(4),
            GraphFamily::D(5),
            GraphFamily::Atilde(6),
            GraphFamily::Dtilde(6),
            GraphFamily::E6,
            GraphFamily::E7,
            GraphFamily::E6tilde,
        ] {
            let t = graph_t_series(family, 24).unwrap();
            for source in [CandidateSource::Binary, CandidateSource::Ternary] {
                let m = candidate_measure(family, source).unwrap();
                assert_eq!(m.t_series(24).unwrap(), t, "{family} {source:?}");
                assert!(m.is_probability(), "{family} {source:?}");
            }
        }
    }

    #[test]
    fn etilde_constant_one_third_fails() {
        let third = etilde_level1_form(3, &rat(1, 3));
        let t = graph_t_series(GraphFamily::new(FamilyTag::E7tilde, 0).unwrap(), 16).unwrap();
        assert_ne!(third.t_series(16).unwrap(), t);
        assert_eq!(etilde_level1_form(3, &rat(1, 2)).t_series(16).unwrap(), t);
    }

    #[test]
    fn unsupported_parameters() {
        assert!(candidate_measure(GraphFamily::Atilde(3), CandidateSource::Binary).is_err());
    }
}
