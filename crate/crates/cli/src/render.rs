use std::fmt::Write as _;

use circmeasure::Rational;
use circmeasure::verify::VerificationReport;
use circmeasure::CyclotomicNumber;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::args::Format;

/// Exact value with a 15-significant-digit decimal beside it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Number {
    pub exact: String,
    pub approx: f64,
}

impl Number {
    pub fn of(c: &CyclotomicNumber) -> Self {
        Number {
            exact: c.to_string(),
            approx: sig15(c.to_complex().0),
        }
    }

    fn text(&self) -> String {
        if self.exact.contains('z') {
            format!("{} ≈ {}", self.exact, self.approx)
        } else {
            self.exact.clone()
        }
    }
}

/// Rounds to 15 significant digits; zero stays zero.
pub fn sig15(x: f64) -> f64 {
    format!("{x:.14e}").parse().unwrap_or(x)
}

#[derive(Debug, Serialize)]
pub struct Atom {
    pub exponent: usize,
    pub weight: Number,
}

#[derive(Debug, Serialize)]
pub struct RealAtom {
    pub location: Number,
    pub weight: Number,
}

#[derive(Debug, Serialize)]
pub struct Term {
    pub l: usize,
    pub m: usize,
    pub label: String,
    pub coefficient: String,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Data {
    Series {
        quantity: &'static str,
        subject: String,
        order: usize,
        coefficients: Vec<String>,
    },
    Measure {
        expr: String,
        support_order: usize,
        mass: Number,
        probability: bool,
        atoms: Vec<Atom>,
    },
    Moments {
        expr: String,
        moments: Vec<Number>,
    },
    RealMeasure {
        expr: String,
        atoms: Vec<RealAtom>,
    },
    Expansion {
        expr: String,
        n: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        level: Option<usize>,
        terms: Vec<Term>,
    },
}

impl Data {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        match self {
            Data::Series {
                quantity,
                subject,
                order,
                coefficients,
            } => {
                let lhs = match *quantity {
                    "loops" => {
                        writeln!(out, "{}", coefficients.join(", ")).unwrap();
                        return out;
                    }
                    "xi" => subject.clone(),
                    _ => format!("{quantity}({subject})"),
                };
                writeln!(out, "{lhs} = {} + O(q^{})", polynomial(coefficients), order + 1).unwrap();
            }
            Data::Measure {
                support_order,
                mass,
                probability,
                atoms,
                ..
            } => {
                let kind = if *probability { "probability" } else { "signed" };
                writeln!(
                    out,
                    "measure on the {support_order}-th roots of unity, mass {}, {kind}",
                    mass.text()
                )
                .unwrap();
                for a in atoms {
                    writeln!(out, "z^{}: {}", a.exponent, a.weight.text()).unwrap();
                }
            }
            Data::Moments { moments, .. } => {
                for (k, m) in moments.iter().enumerate() {
                    writeln!(out, "m_{k} = {}", m.text()).unwrap();
                }
            }
            Data::RealMeasure { atoms, .. } => {
                for a in atoms {
                    writeln!(out, "x = {}: {}", a.location.text(), a.weight.text()).unwrap();
                }
            }
            Data::Expansion { n, level, terms, .. } => {
                match level {
                    Some(l) => writeln!(out, "level {l} (n = {n})").unwrap(),
                    None => writeln!(out, "n = {n}").unwrap(),
                }
                if terms.is_empty() {
                    writeln!(out, "0").unwrap();
                }
                for t in terms {
                    writeln!(out, "{} * {}", t.coefficient, t.label).unwrap();
                }
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv_writer();
        match self {
            Data::Series { coefficients, .. } => w.write_record(coefficients),
            Data::Measure { atoms, .. } => {
                w.write_record(["exponent", "exact", "approx"]).unwrap();
                atoms.iter().try_for_each(|a| {
                    w.write_record([a.exponent.to_string(), a.weight.exact.clone(), a.weight.approx.to_string()])
                })
            }
            Data::Moments { moments, .. } => {
                w.write_record(["k", "exact", "approx"]).unwrap();
                moments
                    .iter()
                    .enumerate()
                    .try_for_each(|(k, m)| w.write_record([k.to_string(), m.exact.clone(), m.approx.to_string()]))
            }
            Data::RealMeasure { atoms, .. } => {
                w.write_record(["location", "location_approx", "weight", "weight_approx"])
                    .unwrap();
                atoms.iter().try_for_each(|a| {
                    w.write_record([
                        a.location.exact.clone(),
                        a.location.approx.to_string(),
                        a.weight.exact.clone(),
                        a.weight.approx.to_string(),
                    ])
                })
            }
            Data::Expansion { terms, .. } => {
                w.write_record(["l", "m", "term", "coefficient"]).unwrap();
                terms.iter().try_for_each(|t| {
                    w.write_record([t.l.to_string(), t.m.to_string(), t.label.clone(), t.coefficient.clone()])
                })
            }
        }
        .expect("writing to memory");
        finish(w)
    }
}

pub fn report(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Text => r.to_markdown(),
        Format::Json => r.to_json() + "\n",
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["id", "status", "order", "elapsed_ms", "details", "location", "expected", "actual"])
                .unwrap();
            for c in &r.checks {
                let status = serde_json::to_value(c.status).unwrap();
                let d = c.difference.clone().unwrap_or_default();
                w.write_record([
                    c.id.as_str(),
                    status.as_str().unwrap(),
                    &c.order.to_string(),
                    &format!("{:.3}", c.elapsed_ms),
                    &c.details,
                    &d.location,
                    &d.expected,
                    &d.actual,
                ])
                .unwrap();
            }
            finish(w)
        }
    }
}

pub fn summary(r: &VerificationReport) -> String {
    let mut out = format!(
        "order {}: {} passed, {} failed, {} skipped\n",
        r.order, r.passed, r.failed, r.skipped
    );
    for c in r.failures() {
        write!(out, "FAIL {}: {}", c.id, c.details).unwrap();
        if let Some(d) = &c.difference {
            write!(out, " (at {}: expected {}, got {})", d.location, d.expected, d.actual).unwrap();
        }
        out.push('\n');
    }
    out
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 fields")
}

/// `1 + q - 2*q^3` from coefficient strings.
fn polynomial(coefficients: &[String]) -> String {
    let mut out = String::new();
    for (k, c) in coefficients.iter().enumerate() {
        let r: Rational = c.parse().expect("rational coefficient");
        if r.is_zero() {
            continue;
        }
        let mag = r.abs();
        let sign = if r.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if r.is_negative() {
                out.push('-');
            }
        } else {
            write!(out, " {sign} ").unwrap();
        }
        let monomial = match k {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{k}"),
        };
        match (k, mag.is_one()) {
            (0, _) => write!(out, "{mag}").unwrap(),
            (_, true) => out.push_str(&monomial),
            (_, false) => write!(out, "{mag}*{monomial}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(sig15(1.0 / 3.0).to_string(), "0.333333333333333");
        assert_eq!(sig15((2.0 - 3f64.sqrt()) / 48.0).to_string(), "0.00558227484231506");
        assert_eq!(sig15(0.0), 0.0);
    }

    #[test]
    fn polynomial_text() {
        let c: Vec<String> = ["1", "-1", "0", "2/3"].iter().map(|s| s.to_string()).collect();
        assert_eq!(polynomial(&c), "1 - q + 2/3*q^3");
        assert_eq!(polynomial(&["0".to_string()]), "0");
    }

    #[test]
    fn csv_quotes_commas() {
        let d = Data::Expansion {
            expr: "x".into(),
            n: 2,
            level: None,
            terms: vec![Term {
                l: 1,
                m: 2,
                label: "a,b".into(),
                coefficient: "1/2".into(),
            }],
        };
        assert_eq!(d.render(Format::Csv), "l,m,term,coefficient\n1,2,\"a,b\",1/2\n");
    }
}
