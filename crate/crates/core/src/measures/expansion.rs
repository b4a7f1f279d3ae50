use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{solve, LinearSolution};
use crate::exact::{PowerSeries, QPolynomial, Rational};

use super::{density_measure, lincomb, BaseMeasure, CyclotomicMeasure, MeasureError};

/// The measure `Re(1 - q^{2l})_m`, with `l = 0` standing for `d_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicTerm {
    pub l: usize,
    pub m: usize,
}

impl BasicTerm {
    pub fn measure(self) -> CyclotomicMeasure {
        let p = if self.l == 0 {
            QPolynomial::one()
        } else {
            QPolynomial::one_minus_power(self.l)
        };
        density_measure(&p, BaseMeasure::D, self.m)
    }

    /// `S(q)` of the term in closed form: `(2 - q^l - q^{m-l}) / (1 - q^m)`
    /// for `l ≥ 1`, `2 / (1 - q^m)` for `l = 0`.
    pub fn stieltjes_series(self, order: usize) -> PowerSeries {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = Rational::from_integer(2.into());
        if self.l > 0 {
            for k in [self.l, self.m - self.l] {
                if k <= order {
                    coeffs[k] -= Rational::one();
                }
            }
        }
        let mut s = PowerSeries::new(order, coeffs);
        s.div_binomial(self.m, -1);
        s
    }
}

impl fmt::Display for BasicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.l == 0 {
            write!(f, "d_{}", self.m)
        } else {
            write!(f, "Re(1-q^{})_{}", 2 * self.l, self.m)
        }
    }
}

/// `ε = Σ_l r_l Re(1 - q^{2l})_n` over `0 ≤ l ≤ n/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionResult {
    pub n: usize,
    pub coefficients: BTreeMap<usize, Rational>,
}

impl ExpansionResult {
    pub fn terms(&self) -> impl Iterator<Item = (BasicTerm, &Rational)> {
        let n = self.n;
        self.coefficients
            .iter()
            .map(move |(&l, c)| (BasicTerm { l, m: n }, c))
    }

    pub fn reconstruct(&self) -> CyclotomicMeasure {
        lincomb(
            &self
                .terms()
                .map(|(t, c)| (c.clone(), t.measure()))
                .collect::<Vec<_>>(),
        )
    }

    /// Largest `l` carrying a nonzero coefficient.
    pub fn max_level(&self) -> usize {
        self.coefficients.keys().next_back().copied().unwrap_or(0)
    }
}

/// Expansion of `ε` in the basis `Re(1 - q^{2l})_n`.
///
/// Works on `Q(q) = S(q)(1 - q^n)`, which must be a polynomial of degree
/// below `n` with `Q_k = Q_{n-k}`; `Re(1 - q^{2l})_n` has
/// `Q = 2 - q^l - q^{n-l}` and `d_n` has `Q = 2`.
pub fn cyclotomic_expansion(
    e: &CyclotomicMeasure,
    n: usize,
) -> Result<ExpansionResult, MeasureError> {
    assert!(n >= 1);
    let s = e.stieltjes_series(2 * n + 1)?;
    let mut q = s;
    q.mul_binomial(n, -1);
    if (n..=2 * n + 1).any(|k| !q.coeff(k).is_zero()) {
        return Err(MeasureError::SupportTooLarge { n });
    }
    if (1..n).any(|k| q.coeff(k) != q.coeff(n - k)) {
        return Err(MeasureError::AsymmetricR { n });
    }
    let mut coefficients = BTreeMap::new();
    let mut constant = q.coeff(0).clone();
    for l in 1..=n / 2 {
        let c = if 2 * l == n {
            -q.coeff(l) / Rational::from_integer(2.into())
        } else {
            -q.coeff(l).clone()
        };
        constant -= Rational::from_integer(2.into()) * &c;
        if !c.is_zero() {
            coefficients.insert(l, c);
        }
    }
    let d = constant / Rational::from_integer(2.into());
    if !d.is_zero() {
        coefficients.insert(0, d);
    }
    Ok(ExpansionResult { n, coefficients })
}

/// Canonical expansion over the divisor family
/// `{Re(1 - q^{2l})_m : m | n, m > l, l ≤ max_level}`.
///
/// Columns are ordered by `(l, m)`; free columns are set to zero.
/// `None` when no expansion at this level exists.
pub fn expand_at_level(
    e: &CyclotomicMeasure,
    n: usize,
    max_level: usize,
) -> Result<Option<Vec<(BasicTerm, Rational)>>, MeasureError> {
    let target = e.stieltjes_series(n.saturating_sub(1))?;
    let columns: Vec<BasicTerm> = (0..=max_level)
        .flat_map(|l| {
            (1..=n)
                .filter(move |m| n % m == 0 && (l == 0 || *m > l))
                .map(move |m| BasicTerm { l, m })
        })
        .collect();
    let series: Vec<PowerSeries> = columns
        .iter()
        .map(|t| t.stieltjes_series(n.saturating_sub(1)))
        .collect();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|k| series.iter().map(|s| s.coeff(k).clone()).collect())
        .collect();
    let rhs: Vec<Rational> = (0..n).map(|k| target.coeff(k).clone()).collect();
    Ok(match solve(&rows, &rhs) {
        LinearSolution::Inconsistent => None,
        sol => Some(
            columns
                .into_iter()
                .zip(sol.solution().unwrap().iter().cloned())
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        ),
    })
}

/// Level of a measure together with its canonical expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelResult {
    pub n: usize,
    pub level: usize,
    pub terms: Vec<(BasicTerm, Rational)>,
}

/// Least `L` admitting an expansion over `{Re(1 - q^{2l})_m : l ≤ L}` with
/// every `m` dividing the half-order `n` of the minimal support.
pub fn level(e: &CyclotomicMeasure) -> Result<LevelResult, MeasureError> {
    let n = e.minimal_order() / 2;
    for l in 0..=n / 2 {
        if let Some(terms) = expand_at_level(e, n, l)? {
            return Ok(LevelResult { n, level: l, terms });
        }
    }
    Err(MeasureError::SupportTooLarge { n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::measures::{named_measure, Density};

    fn d(n: usize) -> CyclotomicMeasure {
        named_measure(Density::One, BaseMeasure::D, n)
    }

    #[test]
    fn closed_form_s_matches_moments() {
        for m in 1..=10 {
            for l in 0..m {
                let t = BasicTerm { l, m };
                assert_eq!(t.measure().stieltjes_series(30).unwrap(), t.stieltjes_series(30), "{t}");
            }
        }
    }

    #[test]
    fn expansion_of_basis_elements() {
        for n in 1..=12 {
            let r = cyclotomic_expansion(&d(n), n).unwrap();
            assert_eq!(r.coefficients, BTreeMap::from([(0, int(1))]));
            for l in 1..=n / 2 {
                let e = BasicTerm { l, m: n }.measure();
                let r = cyclotomic_expansion(&e, n).unwrap();
                assert_eq!(r.reconstruct(), e);
            }
        }
    }

    #[test]
    fn expansion_errors() {
        assert_eq!(
            cyclotomic_expansion(&d(5), 3),
            Err(MeasureError::SupportTooLarge { n: 3 })
        );
        // d_3 expanded at n = 6 is fine: it lives on the 12th roots.
        let r = cyclotomic_expansion(&d(3), 6).unwrap();
        assert_eq!(r.reconstruct(), d(3));
        assert!(cyclotomic_expansion(&CyclotomicMeasure::zero(), 4)
            .unwrap()
            .coefficients
            .is_empty());
    }

    #[test]
    fn levels_of_simple_measures() {
        for n in 1..=10 {
            assert_eq!(level(&d(n)).unwrap().level, 0);
            let a = named_measure(Density::Alpha, BaseMeasure::D, n);
            assert!(level(&a).unwrap().level <= 1);
        }
        let gamma2 = named_measure(Density::Gamma, BaseMeasure::D, 2);
        let r = level(&gamma2).unwrap();
        assert_eq!(r.level, 0);
        assert_eq!(r.terms, vec![(BasicTerm { l: 0, m: 1 }, int(-1)), (BasicTerm { l: 0, m: 2 }, int(2))]);
    }

    #[test]
    fn alpha12_is_not_a_sum_of_uniform_measures() {
        let a = named_measure(Density::Alpha, BaseMeasure::D, 12);
        assert_eq!(expand_at_level(&a, 12, 0).unwrap(), None);
        let r = level(&a).unwrap();
        assert_eq!(r.level, 1);
        assert_eq!(r.terms, vec![(BasicTerm { l: 1, m: 12 }, rat(1, 1))]);
    }
}
