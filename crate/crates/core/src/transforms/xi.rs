use std::fmt;

use crate::exact::PowerSeries;

use super::TransformError;

/// `1 - q^n` (minus) or `1 + q^n` (plus, written `n+`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiFactor {
    pub exponent: u32,
    pub plus: bool,
}

impl XiFactor {
    pub fn minus(exponent: u32) -> Self {
        XiFactor {
            exponent,
            plus: false,
        }
    }

    pub fn plus(exponent: u32) -> Self {
        XiFactor {
            exponent,
            plus: true,
        }
    }

    fn sign(self) -> i8 {
        if self.plus {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for XiFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.exponent, if self.plus { "+" } else { "" })
    }
}

/// Extra divisor: none, `1 - q` (ξ′) or `1 - q²` (ξ″).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Normalizer {
    #[default]
    None,
    Prime,
    DoublePrime,
}

/// Formal quotient of products of `1 ± q^n` factors.
///
/// Two expressions denote the same function when their expansions agree;
/// the structure itself is not normalised.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XiExpression {
    numerator: Vec<XiFactor>,
    denominator: Vec<XiFactor>,
    normalizer: Normalizer,
}

impl XiExpression {
    pub fn new(
        numerator: Vec<XiFactor>,
        denominator: Vec<XiFactor>,
        normalizer: Normalizer,
    ) -> Result<Self, TransformError> {
        if numerator
            .iter()
            .chain(&denominator)
            .any(|f| f.exponent == 0)
        {
            return Err(TransformError::ZeroExponent);
        }
        Ok(XiExpression {
            numerator,
            denominator,
            normalizer,
        })
    }

    pub fn numerator(&self) -> &[XiFactor] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[XiFactor] {
        &self.denominator
    }

    pub fn normalizer(&self) -> Normalizer {
        self.normalizer
    }

    /// Exact expansion to `q^order`.
    pub fn expand(&self, order: usize) -> PowerSeries {
        let mut s = PowerSeries::one(order);
        for f in &self.numerator {
            s.mul_binomial(f.exponent as usize, f.sign());
        }
        for f in &self.denominator {
            s.div_binomial(f.exponent as usize, f.sign());
        }
        match self.normalizer {
            Normalizer::None => {}
            Normalizer::Prime => s.div_binomial(1, -1),
            Normalizer::DoublePrime => s.div_binomial(2, -1),
        }
        s
    }

    /// Equality as rational functions, decided on expansions to `order`.
    pub fn series_eq(&self, other: &Self, order: usize) -> bool {
        self.expand(order) == other.expand(order)
    }
}

/// Canonical text form, e.g. `xi'(1,2+:3)`.
impl fmt::Display for XiExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let primes = match self.normalizer {
            Normalizer::None => "",
            Normalizer::Prime => "'",
            Normalizer::DoublePrime => "''",
        };
        let join = |fs: &[XiFactor]| {
            fs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "xi{primes}({}:{})",
            join(&self.numerator),
            join(&self.denominator)
        )
    }
}
