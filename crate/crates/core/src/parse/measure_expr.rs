use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::Rational;
use crate::measures::{lincomb, named_measure, BaseMeasure, CyclotomicMeasure, Density};

use super::cursor::Cursor;
use super::ParseError;

/// Syntax tree of a measure expression.
///
/// Scalars are nonnegative; signs are carried by `Neg` and `Sub`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasureExpr {
    Atom {
        density: Density,
        primes: usize,
        n: usize,
    },
    Scalar(Rational),
    Neg(Box<MeasureExpr>),
    Add(Box<MeasureExpr>, Box<MeasureExpr>),
    Sub(Box<MeasureExpr>, Box<MeasureExpr>),
    Mul(Box<MeasureExpr>, Box<MeasureExpr>),
    Div(Box<MeasureExpr>, BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvaluationError {
    #[error("{name} takes at most {max} primes, got {got}")]
    TooManyPrimes {
        name: &'static str,
        max: usize,
        got: usize,
    },
    #[error("measure index must be at least 1")]
    ZeroIndex,
    #[error("product of two measures")]
    MeasureProduct,
    #[error("sum of a measure and a nonzero scalar")]
    MixedSum,
    #[error("expression is a nonzero scalar, not a measure")]
    ScalarResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvaluationError),
}

pub fn parse_measure_ast(text: &str) -> Result<MeasureExpr, ParseError> {
    let mut c = Cursor::new(text);
    let e = expr(&mut c)?;
    c.finish()?;
    Ok(e)
}

pub fn parse_measure_expr(text: &str) -> Result<CyclotomicMeasure, MeasureExprError> {
    Ok(parse_measure_ast(text)?.eval()?)
}

fn expr(c: &mut Cursor<'_>) -> Result<MeasureExpr, ParseError> {
    let mut acc = if c.eat('-') {
        MeasureExpr::Neg(Box::new(term(c)?))
    } else {
        c.eat('+');
        term(c)?
    };
    loop {
        if c.eat('+') {
            acc = MeasureExpr::Add(Box::new(acc), Box::new(term(c)?));
        } else if c.eat('-') {
            acc = MeasureExpr::Sub(Box::new(acc), Box::new(term(c)?));
        } else {
            return Ok(acc);
        }
    }
}

fn term(c: &mut Cursor<'_>) -> Result<MeasureExpr, ParseError> {
    let mut acc = factor(c)?;
    while c.eat('*') {
        acc = MeasureExpr::Mul(Box::new(acc), Box::new(factor(c)?));
    }
    if c.eat('/') {
        acc = MeasureExpr::Div(Box::new(acc), nonzero_integer(c)?);
    }
    Ok(acc)
}

fn factor(c: &mut Cursor<'_>) -> Result<MeasureExpr, ParseError> {
    const EXPECTED: &[&str] = &["number", "d", "alpha", "beta", "gamma", "("];
    if c.eat('(') {
        let e = expr(c)?;
        c.expect(')', ")")?;
        return Ok(e);
    }
    if c.at_digit() {
        let p = c.integer()?;
        if c.eat('/') {
            let q = nonzero_integer(c)?;
            return Ok(MeasureExpr::Scalar(Rational::new(p, q)));
        }
        return Ok(MeasureExpr::Scalar(Rational::from_integer(p)));
    }
    c.skip_ws();
    let at = c.pos();
    let density = match c.word() {
        "d" => Density::One,
        "alpha" => Density::Alpha,
        "beta" => Density::Beta,
        "gamma" => Density::Gamma,
        _ => return Err(c.error_at(at, EXPECTED)),
    };
    let primes = c.count_primes();
    if !c.eat_tight('_') {
        return Err(c.error(&["'", "_"]));
    }
    let at = c.pos();
    let n = c.integer_tight()?;
    let n = n.to_usize().ok_or_else(|| c.error_at(at, &["integer"]))?;
    Ok(MeasureExpr::Atom { density, primes, n })
}

fn nonzero_integer(c: &mut Cursor<'_>) -> Result<BigInt, ParseError> {
    c.skip_ws();
    let at = c.pos();
    let q = c.integer()?;
    if q.is_zero() {
        return Err(c.error_at(at, &["nonzero integer"]));
    }
    Ok(q)
}

enum Value {
    Scalar(Rational),
    Measure(CyclotomicMeasure),
}

impl Value {
    fn into_measure(self) -> Result<CyclotomicMeasure, EvaluationError> {
        match self {
            Value::Measure(m) => Ok(m),
            Value::Scalar(s) if s.is_zero() => Ok(CyclotomicMeasure::zero()),
            Value::Scalar(_) => Err(EvaluationError::MixedSum),
        }
    }
}

impl MeasureExpr {
    pub fn eval(&self) -> Result<CyclotomicMeasure, EvaluationError> {
        match self.value()? {
            Value::Measure(m) => Ok(m),
            Value::Scalar(s) if s.is_zero() => Ok(CyclotomicMeasure::zero()),
            Value::Scalar(_) => Err(EvaluationError::ScalarResult),
        }
    }

    fn value(&self) -> Result<Value, EvaluationError> {
        let one = || Rational::from_integer(1.into());
        Ok(match self {
            MeasureExpr::Atom { density, primes, n } => {
                let (name, max) = match density {
                    Density::One => ("d", 3),
                    other => (other.name(), 2),
                };
                if *primes > max {
                    return Err(EvaluationError::TooManyPrimes {
                        name,
                        max,
                        got: *primes,
                    });
                }
                if *n == 0 {
                    return Err(EvaluationError::ZeroIndex);
                }
                let base = BaseMeasure::from_primes(*primes).expect("checked above");
                Value::Measure(named_measure(*density, base, *n))
            }
            MeasureExpr::Scalar(s) => Value::Scalar(s.clone()),
            MeasureExpr::Neg(a) => match a.value()? {
                Value::Scalar(s) => Value::Scalar(-s),
                Value::Measure(m) => Value::Measure(m.scale(&-one())),
            },
            MeasureExpr::Add(a, b) | MeasureExpr::Sub(a, b) => {
                let sign = if matches!(self, MeasureExpr::Add(..)) {
                    one()
                } else {
                    -one()
                };
                match (a.value()?, b.value()?) {
                    (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + sign * y),
                    (x, y) => Value::Measure(lincomb(&[
                        (one(), x.into_measure()?),
                        (sign, y.into_measure()?),
                    ])),
                }
            }
            MeasureExpr::Mul(a, b) => match (a.value()?, b.value()?) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
                (Value::Scalar(x), Value::Measure(m)) | (Value::Measure(m), Value::Scalar(x)) => {
                    Value::Measure(m.scale(&x))
                }
                (Value::Measure(_), Value::Measure(_)) => {
                    return Err(EvaluationError::MeasureProduct)
                }
            },
            MeasureExpr::Div(a, k) => {
                let r = Rational::new(1.into(), k.clone());
                match a.value()? {
                    Value::Scalar(x) => Value::Scalar(x * r),
                    Value::Measure(m) => Value::Measure(m.scale(&r)),
                }
            }
        })
    }

    fn is_term(&self) -> bool {
        !matches!(
            self,
            MeasureExpr::Add(..) | MeasureExpr::Sub(..) | MeasureExpr::Neg(..)
        )
    }

    fn is_factor(&self) -> bool {
        matches!(self, MeasureExpr::Atom { .. } | MeasureExpr::Scalar(_))
    }

    fn write_wrapped(&self, f: &mut fmt::Formatter<'_>, wrap: bool) -> fmt::Result {
        if wrap {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for MeasureExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureExpr::Atom { density, primes, n } => {
                write!(f, "{}{}_{n}", density.name(), "'".repeat(*primes))
            }
            MeasureExpr::Scalar(s) => {
                debug_assert!(!s.is_negative());
                write!(f, "{s}")
            }
            MeasureExpr::Neg(a) => {
                write!(f, "-")?;
                a.write_wrapped(f, !a.is_term())
            }
            MeasureExpr::Add(a, b) | MeasureExpr::Sub(a, b) => {
                write!(f, "{a}")?;
                let op = if matches!(self, MeasureExpr::Add(..)) { '+' } else { '-' };
                write!(f, " {op} ")?;
                b.write_wrapped(f, !b.is_term())
            }
            MeasureExpr::Mul(a, b) => {
                a.write_wrapped(f, !matches!(**a, MeasureExpr::Mul(..)) && !a.is_factor())?;
                write!(f, "*")?;
                b.write_wrapped(f, !b.is_factor())
            }
            MeasureExpr::Div(a, k) => {
                let bare = match &**a {
                    MeasureExpr::Atom { .. } => true,
                    MeasureExpr::Mul(_, last) => matches!(**last, MeasureExpr::Atom { .. }),
                    _ => false,
                };
                a.write_wrapped(f, !bare)?;
                write!(f, "/{k}")
            }
        }
    }
}
