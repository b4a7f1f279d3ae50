use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{CyclotomicNumber, PowerSeries, QPolynomial, Rational};

use super::MeasureError;

/// The four uniform base measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseMeasure {
    /// `d_n`: uniform on the `2n`-th roots of unity.
    D,
    /// `d'_n`: uniform on the odd `4n`-th roots.
    DPrime,
    /// `d''_n`: uniform on the `12n`-th roots of order `6k ± 1`.
    DDoublePrime,
    /// `d'''_n`: uniform on the `6n`-th roots of order `3k ± 1`.
    DTriplePrime,
}

impl BaseMeasure {
    pub fn support_order(self, n: usize) -> usize {
        match self {
            BaseMeasure::D => 2 * n,
            BaseMeasure::DPrime => 4 * n,
            BaseMeasure::DDoublePrime => 12 * n,
            BaseMeasure::DTriplePrime => 6 * n,
        }
    }

    /// Weight at `ζ^j` with `ζ` a primitive root of the support order.
    pub fn weight(self, n: usize, j: usize) -> Option<Rational> {
        let (on, denom) = match self {
            BaseMeasure::D => (true, 2 * n),
            BaseMeasure::DPrime => (j % 2 == 1, 2 * n),
            BaseMeasure::DDoublePrime => (j % 6 == 1 || j % 6 == 5, 4 * n),
            BaseMeasure::DTriplePrime => (j % 3 != 0, 4 * n),
        };
        on.then(|| Rational::new(BigInt::one(), BigInt::from(denom)))
    }

    /// Number of primes in the usual notation.
    pub fn primes(self) -> usize {
        match self {
            BaseMeasure::D => 0,
            BaseMeasure::DPrime => 1,
            BaseMeasure::DDoublePrime => 2,
            BaseMeasure::DTriplePrime => 3,
        }
    }

    pub fn from_primes(primes: usize) -> Option<Self> {
        [
            BaseMeasure::D,
            BaseMeasure::DPrime,
            BaseMeasure::DDoublePrime,
            BaseMeasure::DTriplePrime,
        ]
        .get(primes)
        .copied()
    }
}

/// The polynomial densities `Re(P(q²))` used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Density {
    One,
    /// `Re(1 - q²)`
    Alpha,
    /// `Re(1 - q⁴)`
    Beta,
    /// `Re(1 - q⁶)`
    Gamma,
}

impl Density {
    pub fn level(self) -> usize {
        match self {
            Density::One => 0,
            Density::Alpha => 1,
            Density::Beta => 2,
            Density::Gamma => 3,
        }
    }

    pub fn polynomial(self) -> QPolynomial {
        match self.level() {
            0 => QPolynomial::one(),
            l => QPolynomial::one_minus_power(l),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Density::One => "d",
            Density::Alpha => "alpha",
            Density::Beta => "beta",
            Density::Gamma => "gamma",
        }
    }
}

/// Signed atomic measure on the `N`-th roots of unity, `N` even, with
/// real cyclotomic weights and equal weight at `q, 1/q, -q, -1/q`.
///
/// Weights are stored at the support order; zero weights are omitted.
#[derive(Clone, Debug)]
pub struct CyclotomicMeasure {
    order: usize,
    weights: BTreeMap<usize, CyclotomicNumber>,
}

impl CyclotomicMeasure {
    /// Validated constructor: rejects odd orders, non-real weights and
    /// weights breaking the four-fold symmetry.
    pub fn new<I>(order: usize, weights: I) -> Result<Self, MeasureError>
    where
        I: IntoIterator<Item = (usize, CyclotomicNumber)>,
    {
        let m = Self::from_raw_weights(order, weights)?;
        if let Some((&j, _)) = m.weights.iter().find(|(_, w)| !w.is_real()) {
            return Err(MeasureError::NotReal { exponent: j });
        }
        m.check_symmetry()?;
        Ok(m)
    }

    /// Builds a measure without the symmetry and reality checks.
    pub fn from_raw_weights<I>(order: usize, weights: I) -> Result<Self, MeasureError>
    where
        I: IntoIterator<Item = (usize, CyclotomicNumber)>,
    {
        if order == 0 || order % 2 != 0 {
            return Err(MeasureError::OddOrder(order));
        }
        let mut acc: BTreeMap<usize, CyclotomicNumber> = BTreeMap::new();
        for (j, w) in weights {
            let w = w.embed(order.lcm(&w.order()))?;
            let w = if w.order() == order {
                w
            } else {
                w.project(order)?
            };
            let slot = acc
                .entry(j % order)
                .or_insert_with(|| CyclotomicNumber::zero(order));
            *slot = &*slot + &w;
        }
        acc.retain(|_, w| !w.is_zero());
        Ok(CyclotomicMeasure {
            order,
            weights: acc,
        })
    }

    pub fn zero() -> Self {
        CyclotomicMeasure {
            order: 2,
            weights: BTreeMap::new(),
        }
    }

    pub fn support_order(&self) -> usize {
        self.order
    }

    pub fn weight(&self, j: usize) -> CyclotomicNumber {
        self.weights
            .get(&(j % self.order))
            .cloned()
            .unwrap_or_else(|| CyclotomicNumber::zero(self.order))
    }

    /// Nonzero atoms as `(exponent, weight)`.
    pub fn atoms(&self) -> impl Iterator<Item = (usize, &CyclotomicNumber)> {
        self.weights.iter().map(|(&j, w)| (j, w))
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn check_symmetry(&self) -> Result<(), MeasureError> {
        let n = self.order;
        for (&j, w) in &self.weights {
            for image in [(n - j) % n, (j + n / 2) % n] {
                if &self.weight(image) != w {
                    return Err(MeasureError::SymmetryViolation { exponent: j });
                }
            }
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_symmetry().is_ok()
    }

    pub fn mass(&self) -> CyclotomicNumber {
        self.weights
            .values()
            .fold(CyclotomicNumber::zero(self.order), |acc, w| &acc + w)
    }

    /// Nonnegative weights and mass exactly 1. Signs of irrational weights
    /// are decided numerically.
    pub fn is_probability(&self) -> bool {
        self.weights.values().all(|w| w.signum_real() >= 0)
            && self.mass().as_rational().is_ok_and(|m| m.is_one())
    }

    /// Same measure on the `target`-th roots, `target` a multiple of the
    /// support order.
    pub fn lift(&self, target: usize) -> Result<Self, MeasureError> {
        if target % self.order != 0 {
            return Err(MeasureError::NotAMultiple {
                from: self.order,
                to: target,
            });
        }
        let step = target / self.order;
        let mut weights = BTreeMap::new();
        for (&j, w) in &self.weights {
            weights.insert(j * step, w.embed(target)?);
        }
        Ok(CyclotomicMeasure {
            order: target,
            weights,
        })
    }

    /// Smallest even order on whose roots the measure lives.
    pub fn minimal_order(&self) -> usize {
        let g = self
            .weights
            .keys()
            .fold(self.order, |g, &j| g.gcd(&j));
        let mut m = self.order / g;
        if m % 2 == 1 {
            m *= 2;
        }
        m
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return CyclotomicMeasure {
                order: self.order,
                weights: BTreeMap::new(),
            };
        }
        CyclotomicMeasure {
            order: self.order,
            weights: self
                .weights
                .iter()
                .map(|(&j, w)| (j, w.scale(c)))
                .collect(),
        }
    }

    /// `Σ_j w_j ζ^{jk}`.
    pub fn moment(&self, k: usize) -> CyclotomicNumber {
        let n = self.order as i64;
        let k = (k % self.order) as i64;
        let terms = self.weights.iter().flat_map(move |(&j, w)| {
            let shift = (j as i64 * k) % n;
            w.coefficients()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (i as i64 + shift, c.clone()))
        });
        CyclotomicNumber::from_exponent_weights(self.order, terms)
    }

    /// `S(q) = 2 ∫ 1/(1 - q u²) dε(u) = Σ 2 m_{2k} q^k`, linear in the
    /// measure. Fails when an even moment is irrational.
    pub fn stieltjes_series(&self, order: usize) -> Result<PowerSeries, MeasureError> {
        let mut cache: HashMap<usize, Rational> = HashMap::new();
        let two = Rational::from_integer(2.into());
        let mut coeffs = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let residue = (2 * k) % self.order;
            let m = match cache.get(&residue) {
                Some(m) => m.clone(),
                None => {
                    let m = self
                        .moment(residue)
                        .as_rational()
                        .map_err(|_| MeasureError::NotRational { moment: 2 * k })?;
                    cache.insert(residue, m.clone());
                    m
                }
            };
            coeffs.push(&two * m);
        }
        Ok(PowerSeries::new(order, coeffs))
    }

    /// `T = (S - 1) / (1 - q)`.
    pub fn t_series(&self, order: usize) -> Result<PowerSeries, MeasureError> {
        let s = self.stieltjes_series(order)?;
        let mut t = &s - &PowerSeries::one(order);
        t.div_binomial(1, -1);
        Ok(t)
    }
}

impl PartialEq for CyclotomicMeasure {
    fn eq(&self, other: &Self) -> bool {
        measure_equal(self, other)
    }
}

/// Lists `exponent: weight` pairs, one per line.
impl fmt::Display for CyclotomicMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "measure on the {}-th roots of unity", self.order)?;
        for (j, w) in &self.weights {
            writeln!(f, "  z^{j}: {w}")?;
        }
        Ok(())
    }
}

pub fn basic_measure(base: BaseMeasure, n: usize) -> CyclotomicMeasure {
    density_measure(&QPolynomial::one(), base, n)
}

/// `Re(P(q²))` times the base measure; signed and null results allowed.
pub fn density_measure(p: &QPolynomial, base: BaseMeasure, n: usize) -> CyclotomicMeasure {
    assert!(n >= 1, "measures are indexed from 1");
    let order = base.support_order(n);
    let constant = p.degree().unwrap_or(0) == 0;
    let weights = (0..order).filter_map(|j| {
        let w = base.weight(n, j)?;
        if constant {
            return Some((j, CyclotomicNumber::rational(order, w * p.coeff(0))));
        }
        let value = CyclotomicNumber::from_exponent_weights(
            order,
            p.coefficients()
                .iter()
                .enumerate()
                .map(|(s, a)| ((2 * j * s) as i64, a.clone())),
        );
        Some((j, value.real_part().scale(&w)))
    });
    CyclotomicMeasure::from_raw_weights(order, weights).expect("even order, embedded weights")
}

/// Shorthand for the named measures `d, α, β, γ` on any base.
pub fn named_measure(density: Density, base: BaseMeasure, n: usize) -> CyclotomicMeasure {
    density_measure(&density.polynomial(), base, n)
}

/// `Σ c_i ε_i` on the lcm of the supports.
pub fn lincomb(terms: &[(Rational, CyclotomicMeasure)]) -> CyclotomicMeasure {
    let order = terms
        .iter()
        .fold(2usize, |acc, (_, m)| acc.lcm(&m.support_order()));
    let mut weights: BTreeMap<usize, CyclotomicNumber> = BTreeMap::new();
    for (c, m) in terms {
        if c.is_zero() {
            continue;
        }
        let lifted = m.lift(order).expect("lcm is a multiple");
        for (j, w) in lifted.weights {
            let w = w.scale(c);
            let slot = weights
                .entry(j)
                .or_insert_with(|| CyclotomicNumber::zero(order));
            *slot = &*slot + &w;
        }
    }
    weights.retain(|_, w| !w.is_zero());
    CyclotomicMeasure { order, weights }
}

/// Atom-by-atom equality on the common support.
pub fn measure_equal(a: &CyclotomicMeasure, b: &CyclotomicMeasure) -> bool {
    let order = a.order.lcm(&b.order);
    let (a, b) = (a.lift(order).unwrap(), b.lift(order).unwrap());
    a.weights == b.weights
}

pub fn moment(e: &CyclotomicMeasure, k: usize) -> CyclotomicNumber {
    e.moment(k)
}

pub fn t_series_of_measure(e: &CyclotomicMeasure, order: usize) -> Result<PowerSeries, MeasureError> {
    e.t_series(order)
}
