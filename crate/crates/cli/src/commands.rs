use std::path::Path;

use anyhow::Context;
use circmeasure::measures::{cyclotomic_expansion, level, pushforward_real, BasicTerm};
use circmeasure::parse::MeasureExprError;
use circmeasure::transforms::graph_t_series;
use circmeasure::verify::{run_matching, SizeMatrix};
use circmeasure::{
    build_ade, parse_measure_expr, parse_xi_expr, CyclotomicMeasure, FamilyTag, GraphFamily, PowerSeries, Rational,
};
use thiserror::Error;

use crate::args::{Command, Format, GraphArgs};
use crate::render::{self, Atom, Data, Number, RealAtom, Term};

/// Bad input from the command line; exits with status 2.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(e: impl ToString) -> anyhow::Error {
    UsageError(e.to_string()).into()
}

/// What a command produced and whether every check it ran passed.
pub struct Outcome {
    pub stdout: String,
    pub success: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, success: true }
    }
}

pub fn dispatch(command: Command, format: Format) -> anyhow::Result<Outcome> {
    let data = match command {
        Command::GraphLoops { graph, order } => {
            let family = resolve_family(&graph)?;
            let g = build_ade(family).map_err(usage)?;
            Data::Series {
                quantity: "loops",
                subject: family.to_string(),
                order: order.order,
                coefficients: g.loop_counts(order.order).iter().map(|c| c.to_string()).collect(),
            }
        }
        Command::GraphTseries { graph, order } => {
            let family = resolve_family(&graph)?;
            let t = graph_t_series(family, order.order).map_err(usage)?;
            series("T", family.to_string(), &t)
        }
        Command::XiExpand { expr, order } => {
            let xi = parse_xi_expr(&expr.expr).map_err(|e| usage(e.render(&expr.expr)))?;
            series("xi", xi.to_string(), &xi.expand(order.order))
        }
        Command::MeasureShow { expr } => {
            let m = measure(&expr.expr)?;
            Data::Measure {
                support_order: m.support_order(),
                mass: Number::of(&m.mass()),
                probability: m.is_probability(),
                atoms: m
                    .atoms()
                    .map(|(j, w)| Atom {
                        exponent: j,
                        weight: Number::of(w),
                    })
                    .collect(),
                expr: expr.expr,
            }
        }
        Command::MeasureMoments { expr, count } => {
            let m = measure(&expr.expr)?;
            Data::Moments {
                moments: (0..=count).map(|k| Number::of(&m.moment(k))).collect(),
                expr: expr.expr,
            }
        }
        Command::MeasureTseries { expr, order } => {
            let m = measure(&expr.expr)?;
            let t = m.t_series(order.order).map_err(usage)?;
            series("T", expr.expr, &t)
        }
        Command::MeasurePushforward { expr } => {
            let m = measure(&expr.expr)?;
            let real = pushforward_real(&m).map_err(usage)?;
            Data::RealMeasure {
                atoms: real
                    .atoms()
                    .iter()
                    .map(|a| RealAtom {
                        location: Number::of(&a.location),
                        weight: Number::of(&a.weight),
                    })
                    .collect(),
                expr: expr.expr,
            }
        }
        Command::Expand { expr, n } => {
            let m = measure(&expr.expr)?;
            let n = n.unwrap_or(m.minimal_order() / 2);
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let r = cyclotomic_expansion(&m, n).map_err(usage)?;
            Data::Expansion {
                n,
                level: None,
                terms: r.terms().map(|(t, c)| term(t, c)).collect(),
                expr: expr.expr,
            }
        }
        Command::Level { expr } => {
            let m = measure(&expr.expr)?;
            let r = level(&m).map_err(usage)?;
            Data::Expansion {
                n: r.n,
                level: Some(r.level),
                terms: r.terms.iter().map(|(t, c)| term(*t, c)).collect(),
                expr: expr.expr,
            }
        }
        Command::Verify {
            order,
            only,
            graphs,
            out,
        } => return verify(order.order, only.as_deref(), graphs, out.as_deref(), format),
    };
    Ok(Outcome::ok(data.render(format)))
}

fn verify(
    order: usize,
    only: Option<&str>,
    graphs: Option<Vec<String>>,
    out: Option<&Path>,
    format: Format,
) -> anyhow::Result<Outcome> {
    let matrix = match graphs {
        None => SizeMatrix::standard(),
        Some(labels) => {
            let mut m = SizeMatrix::empty();
            for label in labels.iter().filter(|l| !l.is_empty()) {
                let f: GraphFamily = label.parse().map_err(usage)?;
                m.insert(f.tag(), [f.param().unwrap_or(0)]);
            }
            m
        }
    };
    let report = run_matching(order, &matrix, only).map_err(usage)?;
    let stdout = match out {
        Some(path) => {
            let markdown = path.extension().is_some_and(|e| e == "md");
            let body = if markdown {
                report.to_markdown()
            } else {
                render::report(&report, format)
            };
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            render::summary(&report)
        }
        None => render::report(&report, format),
    };
    Ok(Outcome {
        stdout,
        success: report.is_success(),
    })
}

fn resolve_family(args: &GraphArgs) -> anyhow::Result<GraphFamily> {
    match args.param {
        Some(p) => {
            let tag: FamilyTag = args.family.parse().map_err(usage)?;
            GraphFamily::new(tag, p).map_err(usage)
        }
        None => args.family.parse().map_err(usage),
    }
}

fn measure(text: &str) -> anyhow::Result<CyclotomicMeasure> {
    parse_measure_expr(text).map_err(|e| match e {
        MeasureExprError::Parse(p) => usage(p.render(text)),
        MeasureExprError::Eval(e) => usage(format!("{text}: {e}")),
    })
}

fn series(quantity: &'static str, subject: String, s: &PowerSeries) -> Data {
    Data::Series {
        quantity,
        subject,
        order: s.order(),
        coefficients: s.coefficients().iter().map(|c| c.to_string()).collect(),
    }
}

fn term(t: BasicTerm, c: &Rational) -> Term {
    Term {
        l: t.l,
        m: t.m,
        label: t.to_string(),
        coefficient: c.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::{ExprArg, OrderArg};

    fn run(c: Command) -> String {
        dispatch(c, Format::Text).unwrap().stdout
    }

    #[test]
    fn family_with_param() {
        let g = GraphArgs {
            family: "Dtilde".into(),
            param: Some(6),
        };
        assert_eq!(resolve_family(&g).unwrap(), GraphFamily::Dtilde(6));
        let g = GraphArgs {
            family: "E7".into(),
            param: None,
        };
        assert_eq!(resolve_family(&g).unwrap(), GraphFamily::E7);
    }

    #[test]
    fn moments_of_d1() {
        let out = run(Command::MeasureMoments {
            expr: ExprArg { expr: "d_1".into() },
            count: 4,
        });
        assert_eq!(out, "m_0 = 1\nm_1 = 0\nm_2 = 1\nm_3 = 0\nm_4 = 1\n");
    }

    #[test]
    fn xi_polynomial() {
        let out = run(Command::XiExpand {
            expr: ExprArg { expr: "xi(3:)".into() },
            order: OrderArg { order: 4 },
        });
        assert_eq!(out, "xi(3:) = 1 - q^3 + O(q^5)\n");
    }

    #[test]
    fn parse_errors_are_usage_errors() {
        let err = dispatch(
            Command::MeasureShow {
                expr: ExprArg { expr: "d_1 +".into() },
            },
            Format::Text,
        )
        .err()
        .unwrap();
        let u = err.downcast_ref::<UsageError>().unwrap();
        assert!(u.0.contains("^"), "{}", u.0);
    }
}
