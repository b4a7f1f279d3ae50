use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{solve, LinearSolution};
use super::{ExactError, QPolynomial, Rational};

pub fn euler_phi(n: usize) -> usize {
    assert!(n >= 1);
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn mobius(n: usize) -> i8 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// `p * (x^d - 1)`
fn mul_xd_minus_one(p: &[Rational], d: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + d];
    for (i, c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

/// `p / (x^d - 1)`, assuming exact divisibility.
fn div_xd_minus_one(p: &[Rational], d: usize) -> Vec<Rational> {
    let mut rem = p.to_vec();
    let mut quot = vec![Rational::zero(); p.len() - d];
    for i in (d..rem.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        rem[i - d] += &c;
        quot[i - d] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Monic `Φ_N` together with a sparse integer view of its lower terms,
/// used for fast reduction.
struct Modulus {
    poly: QPolynomial,
    phi: usize,
    tail: Vec<(usize, i64)>,
}

fn modulus(n: usize) -> Arc<Modulus> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Modulus>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().unwrap().get(&n) {
        return m.clone();
    }
    let poly = compute_cyclotomic(n);
    let phi = poly.degree().unwrap();
    let tail = poly.coefficients()[..phi]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.to_integer().to_i64().expect("cyclotomic coefficient fits i64")))
        .collect();
    let m = Arc::new(Modulus { poly, phi, tail });
    cache.lock().unwrap().entry(n).or_insert(m).clone()
}

fn compute_cyclotomic(n: usize) -> QPolynomial {
    let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    let mut p = vec![Rational::one()];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            p = mul_xd_minus_one(&p, d);
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            p = div_xd_minus_one(&p, d);
        }
    }
    QPolynomial::new(p)
}

/// The `N`-th cyclotomic polynomial, monic of degree `φ(N)`.
pub fn cyclotomic_poly(n: usize) -> QPolynomial {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    modulus(n).poly.clone()
}

/// Reduces a coefficient vector in powers of `ζ_N` modulo `Φ_N`.
fn reduce(mut buf: Vec<Rational>, m: &Modulus) -> Vec<Rational> {
    let phi = m.phi;
    for i in (phi..buf.len()).rev() {
        if buf[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut buf[i]);
        let base = i - phi;
        for &(t, a) in &m.tail {
            match a {
                1 => buf[base + t] -= &c,
                -1 => buf[base + t] += &c,
                _ => buf[base + t] -= &c * Rational::from_integer(a.into()),
            }
        }
    }
    buf.resize(phi, Rational::zero());
    buf
}

/// Element of the cyclotomic field `Q(ζ_N)`, stored in the power basis
/// `1, ζ_N, …, ζ_N^{φ(N)-1}` after reduction modulo `Φ_N`.
///
/// Equality is field equality: operands of different orders are compared
/// in the field of order `lcm(N₁, N₂)`.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    order: usize,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    /// `Σ w_j ζ_N^j`; exponents are read modulo `N`.
    pub fn from_exponent_weights<I>(order: usize, weights: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        assert!(order >= 1);
        let mut buf = vec![Rational::zero(); order];
        for (j, w) in weights {
            buf[j.rem_euclid(order as i64) as usize] += w;
        }
        Self::from_buffer(order, buf)
    }

    fn from_buffer(order: usize, buf: Vec<Rational>) -> Self {
        let m = modulus(order);
        CyclotomicNumber {
            order,
            coeffs: reduce(buf, &m),
        }
    }

    pub fn zero(order: usize) -> Self {
        CyclotomicNumber {
            order,
            coeffs: vec![Rational::zero(); euler_phi(order)],
        }
    }

    pub fn rational(order: usize, r: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn one(order: usize) -> Self {
        Self::rational(order, Rational::one())
    }

    /// `ζ_N^k`.
    pub fn root_of_unity(order: usize, k: i64) -> Self {
        Self::from_exponent_weights(order, [(k, Rational::one())])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Result<Rational, ExactError> {
        match self.coeffs[1..].iter().position(|c| !c.is_zero()) {
            Some(i) => Err(ExactError::NotRational { index: i + 1 }),
            None => Ok(self.coeffs[0].clone()),
        }
    }

    /// The same element in the field of order `target`, a multiple of the
    /// current order.
    pub fn embed(&self, target: usize) -> Result<Self, ExactError> {
        if target == 0 || target % self.order != 0 {
            return Err(ExactError::NotAMultiple {
                from: self.order,
                to: target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        if self.is_rational() {
            return Ok(Self::rational(target, self.coeffs[0].clone()));
        }
        let step = target / self.order;
        let mut buf = vec![Rational::zero(); target];
        for (j, c) in self.coeffs.iter().enumerate() {
            buf[j * step] = c.clone();
        }
        Ok(Self::from_buffer(target, buf))
    }

    /// Re-expresses the element at a divisor order, when it lies in that
    /// subfield.
    pub fn project(&self, target: usize) -> Result<Self, ExactError> {
        if target == 0 || self.order % target != 0 {
            return Err(ExactError::NotAMultiple {
                from: target,
                to: self.order,
            });
        }
        if self.is_rational() {
            return Ok(Self::rational(target, self.coeffs[0].clone()));
        }
        let phi = euler_phi(target);
        let columns: Vec<Vec<Rational>> = (0..phi)
            .map(|i| {
                Self::root_of_unity(target, i as i64)
                    .embed(self.order)
                    .expect("divisor order")
                    .coeffs
            })
            .collect();
        let rows: Vec<Vec<Rational>> = (0..self.coeffs.len())
            .map(|r| columns.iter().map(|col| col[r].clone()).collect())
            .collect();
        match solve(&rows, &self.coeffs) {
            LinearSolution::Unique(x) | LinearSolution::Underdetermined(x) => {
                Ok(CyclotomicNumber {
                    order: target,
                    coeffs: x,
                })
            }
            LinearSolution::Inconsistent => Err(ExactError::NotInSubfield {
                from: self.order,
                to: target,
            }),
        }
    }

    /// Complex conjugation, the automorphism `ζ_N ↦ ζ_N^{N-1}`.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.order;
        let mut buf = vec![Rational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            buf[(n - j) % n] += c;
        }
        Self::from_buffer(n, buf)
    }

    /// `(z + conj z) / 2`
    pub fn real_part(&self) -> Self {
        (self + &self.conj()).scale(&Rational::new(1.into(), 2.into()))
    }

    pub fn is_real(&self) -> bool {
        self == &self.conj()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `ζ_N^k`.
    pub fn mul_root(&self, k: i64) -> Self {
        let n = self.order;
        let k = k.rem_euclid(n as i64) as usize;
        if k == 0 {
            return self.clone();
        }
        let mut buf = vec![Rational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                buf[(j + k) % n] += c;
            }
        }
        Self::from_buffer(n, buf)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Floating-point value `(re, im)`; for display and sign decisions only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold((0.0, 0.0), |(re, im), (j, c)| {
                let v = c.to_f64().unwrap_or(f64::NAN);
                let theta = std::f64::consts::TAU * j as f64 / n;
                (re + v * theta.cos(), im + v * theta.sin())
            })
    }

    /// Sign of a real element: exact for zero, numerical otherwise.
    pub fn signum_real(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return if self.coeffs[0].is_positive() { 1 } else { -1 };
        }
        if self.to_complex().0 > 0.0 {
            1
        } else {
            -1
        }
    }

    fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        let n = a.order.lcm(&b.order);
        (a.embed(n).unwrap(), b.embed(n).unwrap())
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::lift_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.order != rhs.order {
            let (a, b) = CyclotomicNumber::lift_pair(self, rhs);
            return &a + &b;
        }
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.order != rhs.order {
            let (a, b) = CyclotomicNumber::lift_pair(self, rhs);
            return &a * &b;
        }
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        let phi = self.coeffs.len();
        let mut buf = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    buf[i + j] += a * b;
                }
            }
        }
        CyclotomicNumber::from_buffer(self.order, buf)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

/// Prints exact coordinates, e.g. `1/24 - 1/48*z24^2`.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{j}", self.order)?,
                (_, false) => write!(f, "{mag}*z{}^{j}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn weights(n: usize, pairs: &[(i64, i64)]) -> CyclotomicNumber {
        CyclotomicNumber::from_exponent_weights(n, pairs.iter().map(|&(j, w)| (j, int(w))))
    }

    /// Oracle: (x^N - 1) divided by Φ_d for every proper divisor d,
    /// each Φ_d obtained the same way, by plain long division.
    fn phi_by_division(n: usize, memo: &mut HashMap<usize, QPolynomial>) -> QPolynomial {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut coeffs = vec![0i64; n + 1];
        coeffs[0] = -1;
        coeffs[n] = 1;
        let mut p = QPolynomial::from_ints(&coeffs);
        for d in (1..n).filter(|d| n % d == 0) {
            let phi_d = phi_by_division(d, memo);
            let (q, r) = p.div_rem(&phi_d);
            assert!(r.is_zero());
            p = q;
        }
        memo.insert(n, p.clone());
        p
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), QPolynomial::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), QPolynomial::from_ints(&[1, 0, 1]));
        let mut memo = HashMap::new();
        let oracle = phi_by_division(12, &mut memo);
        assert_eq!(oracle, QPolynomial::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(12), oracle);
    }

    #[test]
    fn matches_division_oracle_up_to_120() {
        let mut memo = HashMap::new();
        for n in 1..=120 {
            let p = cyclotomic_poly(n);
            assert_eq!(p, phi_by_division(n, &mut memo), "Φ_{n}");
            assert_eq!(p.degree(), Some(euler_phi(n)));
        }
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_poly(105).coefficients().iter().any(|c| c == &int(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in 1..=120usize {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(QPolynomial::one(), |acc, d| &acc * &cyclotomic_poly(d));
            let mut coeffs = vec![0i64; n + 1];
            coeffs[0] = -1;
            coeffs[n] = 1;
            assert_eq!(prod, QPolynomial::from_ints(&coeffs), "N = {n}");
        }
    }

    #[test]
    fn make_examples() {
        assert!(weights(4, &[(2, 1), (0, 1)]).is_zero());
        assert_eq!(weights(3, &[(1, 1), (2, 1)]).as_rational(), Ok(int(-1)));
        // 2cos(π/3) = 1, reduced by hand modulo x^4 - x^2 + 1:
        // z^10 = -z^4 = -(z^2 - 1), so z^2 + z^10 = 1
        assert_eq!(weights(12, &[(2, 1), (10, 1)]).as_rational(), Ok(int(1)));
    }

    #[test]
    fn embed_examples() {
        let minus_one = CyclotomicNumber::root_of_unity(2, 1);
        assert_eq!(
            minus_one.embed(4).unwrap().coefficients(),
            CyclotomicNumber::root_of_unity(4, 2).coefficients()
        );
        let one = CyclotomicNumber::one(1).embed(12).unwrap();
        assert_eq!(one.order(), 12);
        assert_eq!(one.as_rational(), Ok(int(1)));
        let z3 = CyclotomicNumber::root_of_unity(3, 1);
        let lifted = z3.embed(6).unwrap();
        // ζ_3 = ζ_6^2 = ζ_6 - 1 modulo x^2 - x + 1
        assert_eq!(lifted.coefficients(), &[int(-1), int(1)]);
        assert_eq!(lifted.project(3).unwrap().coefficients(), z3.coefficients());
        assert_eq!(
            z3.embed(4),
            Err(ExactError::NotAMultiple { from: 3, to: 4 })
        );
    }

    #[test]
    fn project_rejects_elements_outside_subfield() {
        let i = CyclotomicNumber::root_of_unity(4, 1);
        assert_eq!(
            i.embed(12).unwrap().project(6),
            Err(ExactError::NotInSubfield { from: 12, to: 6 })
        );
    }

    #[test]
    fn conjugation_and_real_part() {
        let i = CyclotomicNumber::root_of_unity(4, 1);
        assert_eq!(i.conj(), -&i);
        let r = CyclotomicNumber::rational(7, rat(3, 5));
        assert_eq!(r.conj(), r);
        let z = &CyclotomicNumber::one(8) - &CyclotomicNumber::root_of_unity(8, 2);
        assert_eq!(z.real_part().as_rational(), Ok(int(1)));
    }

    #[test]
    fn sqrt2_is_not_rational() {
        let sqrt2 = weights(8, &[(1, 1), (7, 1)]);
        assert!(matches!(sqrt2.as_rational(), Err(ExactError::NotRational { .. })));
        assert_eq!(&sqrt2 * &sqrt2, CyclotomicNumber::rational(8, int(2)));
    }

    #[test]
    fn cross_order_equality() {
        let a = CyclotomicNumber::root_of_unity(3, 1);
        let b = CyclotomicNumber::root_of_unity(6, 2);
        assert_eq!(a, b);
        assert_ne!(a, CyclotomicNumber::root_of_unity(6, 1));
    }

    #[test]
    fn roots_multiply_by_exponent_addition() {
        let z = CyclotomicNumber::root_of_unity(15, 4);
        assert_eq!(z.pow(4), CyclotomicNumber::root_of_unity(15, 1));
        assert_eq!(z.mul_root(11), CyclotomicNumber::one(15));
    }
}
