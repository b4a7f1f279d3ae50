use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactError, Rational};

/// Power series in `q` truncated after the coefficient of `q^order`.
///
/// The order travels with the value. Arithmetic between series of
/// different orders truncates to the smaller one; comparison between
/// them is an error (see [`PowerSeries::try_eq`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Builds a series of the given order, padding with zeros or
    /// truncating the supplied coefficients as needed.
    pub fn new(order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        Self::new(order, vec![c])
    }

    /// `c q^k`, which is zero when `k > order`.
    pub fn monomial(order: usize, c: Rational, k: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order.min(self.order()), self.coeffs.clone())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for i in k..=order {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Multiplies in place by `1 + sign q^n`.
    pub fn mul_binomial(&mut self, n: usize, sign: i8) {
        for i in (n..self.coeffs.len()).rev() {
            let prev = self.coeffs[i - n].clone();
            if sign >= 0 {
                self.coeffs[i] += prev;
            } else {
                self.coeffs[i] -= prev;
            }
        }
    }

    /// Divides in place by `1 + sign q^n` with `n >= 1`.
    pub fn div_binomial(&mut self, n: usize, sign: i8) {
        assert!(n >= 1, "cannot divide by a binomial with zero exponent");
        for i in n..self.coeffs.len() {
            let prev = self.coeffs[i - n].clone();
            if sign >= 0 {
                self.coeffs[i] -= prev;
            } else {
                self.coeffs[i] += prev;
            }
        }
    }

    /// Multiplicative inverse up to the same order.
    pub fn invert(&self) -> Result<Self, ExactError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(ExactError::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        out[0] = inv0.clone();
        for k in 1..=order {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[k - j];
                }
            }
            out[k] = -acc * &inv0;
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `self ∘ inner`, truncated to the smaller order. `inner` must have a
    /// zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, ExactError> {
        if !inner.coeffs[0].is_zero() {
            return Err(ExactError::NonzeroConstantTerm);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut out = Self::constant(order, self.coeffs[0].clone());
        let mut power = Self::one(order);
        for k in 1..=order {
            power = &power * &inner;
            let c = &self.coeffs[k];
            if !c.is_zero() {
                for (o, p) in out.coeffs.iter_mut().zip(&power.coeffs).skip(k) {
                    if !p.is_zero() {
                        *o += c * p;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Equality that refuses to compare series of different orders.
    pub fn try_eq(&self, other: &Self) -> Result<bool, ExactError> {
        Ok(self.first_difference(other)?.is_none())
    }

    /// First index where the two series differ, with both coefficients.
    pub fn first_difference(
        &self,
        other: &Self,
    ) -> Result<Option<(usize, Rational, Rational)>, ExactError> {
        if self.order() != other.order() {
            return Err(ExactError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| (i, a.clone(), b.clone())))
    }
}

fn zip_truncated<'a>(
    a: &'a PowerSeries,
    b: &'a PowerSeries,
) -> impl Iterator<Item = (&'a Rational, &'a Rational)> {
    a.coeffs.iter().zip(&b.coeffs)
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: zip_truncated(self, rhs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: zip_truncated(self, rhs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})*q^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}
