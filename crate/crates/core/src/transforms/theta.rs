use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{PowerSeries, QPolynomial, Rational};

use super::TransformError;

/// Poincaré series `f(z) = Σ c_k z^k` from loop counts.
pub fn poincare_series(counts: &[BigInt]) -> PowerSeries {
    assert!(!counts.is_empty());
    PowerSeries::new(
        counts.len() - 1,
        counts.iter().cloned().map(Rational::from_integer).collect(),
    )
}

/// The closed-form sum
/// `Σ_{k=0}^{r} (-1)^{r-k} (2r/(r+k)) C(r+k, r-k) c_k`.
///
/// This is the coefficient of `q^r` in `(1-q)/(1+q) f(q/(1+q)²)`, i.e.
/// of `Θ(q) - q`. The `r = 0` term is read as `c_0`.
pub fn theta_coefficient_sum(c: &PowerSeries, r: usize) -> Rational {
    theta_coefficient_sum_with(c, r, &pascal(2 * r))
}

/// Rows `0..=n` of Pascal's triangle.
fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

fn theta_coefficient_sum_with(c: &PowerSeries, r: usize, binomials: &[Vec<BigInt>]) -> Rational {
    if r == 0 {
        return c.coeff(0).clone();
    }
    let mut acc = Rational::zero();
    for k in 0..=r {
        let ck = c.coeff(k);
        if ck.is_zero() {
            continue;
        }
        let binom = &binomials[r + k][r - k];
        let weight = Rational::new(BigInt::from(2 * r) * binom, BigInt::from(r + k));
        if (r - k) % 2 == 0 {
            acc += weight * ck;
        } else {
            acc -= weight * ck;
        }
    }
    acc
}

/// Θ by the coefficient formula, to `q^order`.
///
/// The sum in [`theta_coefficient_sum`] produces the coefficients of `Θ - q`;
/// the leading `q` is added back to `a_1`.
pub fn theta_from_poincare_formula(c: &PowerSeries, order: usize) -> PowerSeries {
    let order = order.min(c.order());
    let binomials = pascal(2 * order);
    let coeffs = (0..=order)
        .map(|r| {
            let a = theta_coefficient_sum_with(c, r, &binomials);
            if r == 1 {
                a + Rational::one()
            } else {
                a
            }
        })
        .collect();
    PowerSeries::new(order, coeffs)
}

/// Θ by direct substitution: `q + (1-q)/(1+q) f(q/(1+q)²)`.
///
/// `f` is evaluated by Horner's rule; multiplying by `q/(1+q)²` is a shift
/// followed by two divisions by `1+q`.
pub fn theta_from_poincare_subst(c: &PowerSeries, order: usize) -> PowerSeries {
    let order = order.min(c.order());
    let mut out = PowerSeries::zero(order);
    for k in (0..=order).rev() {
        out = out.shift(1);
        out.div_binomial(1, 1);
        out.div_binomial(1, 1);
        out = &out + &PowerSeries::constant(order, c.coeff(k).clone());
    }
    out.mul_binomial(1, -1);
    out.div_binomial(1, 1);
    &out + &PowerSeries::monomial(order, Rational::one(), 1)
}

/// `T = (Θ - q) / (1 - q)` at the order of `theta`.
pub fn t_from_theta(theta: &PowerSeries) -> PowerSeries {
    let order = theta.order();
    let mut t = theta - &PowerSeries::monomial(order, Rational::one(), 1);
    t.div_binomial(1, -1);
    t
}

/// Which lemma's closed form to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormVariant {
    /// Density on `d_n`: `(P(q) + q^n P(1/q)) / ((1-q)(1-q^n))`.
    Unprimed,
    /// Density on `d'_n`: `(P(q) - q^n P(1/q)) / ((1-q)(1+q^n))`.
    Primed,
}

/// T series of the measure `Re(P(q²))` on `d_n` or `d'_n`, from the
/// closed form. Requires `deg P < n` and `P(0) = 1`.
pub fn t_closed_form(
    p: &QPolynomial,
    n: usize,
    variant: ClosedFormVariant,
    order: usize,
) -> Result<PowerSeries, TransformError> {
    if let Some(d) = p.degree() {
        if d >= n {
            return Err(TransformError::DegreeTooLarge { degree: d, n });
        }
    }
    if !p.coeff(0).is_one() {
        return Err(TransformError::ConstantTermNotOne);
    }
    let reflected = p.reflect(n).expect("degree checked");
    let numerator = match variant {
        ClosedFormVariant::Unprimed => p + &reflected,
        ClosedFormVariant::Primed => p - &reflected,
    };
    let mut s = numerator.to_series(order);
    s.div_binomial(1, -1);
    match variant {
        ClosedFormVariant::Unprimed => s.div_binomial(n, -1),
        ClosedFormVariant::Primed => s.div_binomial(n, 1),
    }
    Ok(s)
}
