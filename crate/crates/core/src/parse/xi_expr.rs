use num_traits::ToPrimitive;

use crate::transforms::{Normalizer, XiExpression, XiFactor};

use super::cursor::Cursor;
use super::ParseError;

/// Parses `xi(...)`, `xi'(...)` or `xi''(...)`: two comma-separated lists
/// of exponents split by `:`, each exponent optionally followed by `+`.
pub fn parse_xi_expr(text: &str) -> Result<XiExpression, ParseError> {
    let mut c = Cursor::new(text);
    let start = {
        c.skip_ws();
        c.pos()
    };
    if c.word() != "xi" {
        return Err(c.error_at(start, &["xi"]));
    }
    let norm = match c.count_primes() {
        0 => Normalizer::None,
        1 => Normalizer::Prime,
        2 => Normalizer::DoublePrime,
        _ => return Err(c.error_at(c.pos() - 1, &["("])),
    };
    c.expect('(', "(")?;
    let num = factor_list(&mut c, ':')?;
    c.expect(':', ":")?;
    let den = factor_list(&mut c, ')')?;
    c.expect(')', ")")?;
    c.finish()?;
    Ok(XiExpression::new(num, den, norm).expect("exponents checked positive"))
}

fn factor_list(c: &mut Cursor<'_>, close: char) -> Result<Vec<XiFactor>, ParseError> {
    let mut out = Vec::new();
    if c.peek() == Some(close) {
        return Ok(out);
    }
    loop {
        c.skip_ws();
        let at = c.pos();
        let n = c
            .integer()
            .map_err(|_| c.error_at(at, &["positive integer"]))?;
        let n = n
            .to_u32()
            .filter(|&n| n > 0)
            .ok_or_else(|| c.error_at(at, &["positive integer"]))?;
        let plus = c.eat('+');
        out.push(XiFactor { exponent: n, plus });
        if !c.eat(',') {
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{PowerSeries, QPolynomial};

    #[test]
    fn round_trip_examples() {
        for s in ["xi(5+,9+:15+)", "xi(3:)", "xi(:3)", "xi'(1,2+:3)", "xi''(5+:4)", "xi(:)"] {
            assert_eq!(parse_xi_expr(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_xi_expr(" xi ( 12 : 4 , 9+ ) ").unwrap().to_string(), "xi(12:4,9+)");
    }

    #[test]
    fn polynomial_and_inverse() {
        let p = parse_xi_expr("xi(3:)").unwrap().expand(10);
        assert_eq!(p, QPolynomial::one_minus_power(3).to_series(10));
        let inv = parse_xi_expr("xi(:3)").unwrap().expand(10);
        assert_eq!(inv, PowerSeries::from_ints(10, &[1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0]));
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_xi_expr("xi(5+,x:3)").unwrap_err();
        assert_eq!(e.position, 6);
        assert_eq!(e.expected, vec!["positive integer"]);
        assert_eq!(parse_xi_expr("xi(3:0)").unwrap_err().position, 5);
        assert_eq!(parse_xi_expr("xi(3)").unwrap_err().expected, vec![":"]);
        assert_eq!(parse_xi_expr("chi(3:)").unwrap_err().position, 0);
        assert_eq!(parse_xi_expr("xi(3:) q").unwrap_err().expected, vec!["end of input"]);
    }
}
