use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::exact::{PowerSeries, Rational};
use crate::graphs::{build_ade, GraphFamily};
use crate::measures::{
    candidate_formula, candidate_measure, cyclotomic_expansion, level, pushforward_real,
    CandidateSource, CyclotomicMeasure,
};
use crate::transforms::{
    poincare_series, t_from_theta, theorem_2_5_lookup, theta_from_poincare_formula,
    theta_from_poincare_subst,
};

use super::{measure_match, series_match, Check, CheckResult, Failure, Outcome};

/// Highest ADE level allowed by the catalog.
const MAX_LEVEL: usize = 3;

pub(crate) fn checks_for(family: GraphFamily) -> Vec<Check> {
    let bodies: [(&str, fn(GraphFamily, usize) -> Outcome); 7] = [
        ("thm2.5", graph_t_body),
        ("theta", theta_body),
        ("thm7.1", binary_measure_body),
        ("thm8.7", graph_measure_body),
        ("prop3.3", moment_axioms_body),
        ("thm4.6", expansion_body),
        ("level", level_body),
    ];
    bodies
        .into_iter()
        .map(|(claim, body)| Check {
            id: format!("{claim}/{family}"),
            family: Some(family),
            run: Box::new(move |k| body(family, k)),
        })
        .collect()
}

/// Loop counts → Θ by both routes → T, against the closed ξ form.
pub fn verify_graph_t(family: GraphFamily, order: usize) -> CheckResult {
    run_one("thm2.5", family, order, graph_t_body)
}

/// Both candidate measures against the graph: T series, atom-level
/// agreement, real moments against loop counts, and positivity.
pub fn verify_graph_measure(family: GraphFamily, order: usize) -> CheckResult {
    run_one("thm8.7", family, order, graph_measure_body)
}

fn run_one(claim: &str, family: GraphFamily, order: usize, body: fn(GraphFamily, usize) -> Outcome) -> CheckResult {
    Check {
        id: format!("{claim}/{family}"),
        family: Some(family),
        run: Box::new(move |k| body(family, k)),
    }
    .execute(order, false)
}

/// Loop counts and both Θ routes of one graph at one order.
struct Pipeline {
    loops: Vec<BigInt>,
    theta_formula: PowerSeries,
    theta_subst: PowerSeries,
    t: PowerSeries,
}

/// Several checks share a graph's pipeline; compute it once per order.
fn pipeline(family: GraphFamily, order: usize) -> Result<Arc<Pipeline>, Failure> {
    static CACHE: OnceLock<Mutex<HashMap<(GraphFamily, usize), Arc<Pipeline>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(family, order)) {
        return Ok(p.clone());
    }
    let g = build_ade(family).map_err(|e| Failure::msg(e.to_string()))?;
    let loops = g.loop_counts(order);
    let c = poincare_series(&loops);
    let theta_subst = theta_from_poincare_subst(&c, order);
    let p = Arc::new(Pipeline {
        theta_formula: theta_from_poincare_formula(&c, order),
        t: t_from_theta(&theta_subst),
        theta_subst,
        loops,
    });
    cache.lock().unwrap().insert((family, order), p.clone());
    Ok(p)
}

fn graph_t(family: GraphFamily, order: usize) -> Result<PowerSeries, Failure> {
    Ok(pipeline(family, order)?.t.clone())
}

fn candidate(family: GraphFamily, source: CandidateSource) -> Result<(String, CyclotomicMeasure), Failure> {
    static CACHE: OnceLock<Mutex<HashMap<(GraphFamily, CandidateSource), (String, CyclotomicMeasure)>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(family, source)) {
        return Ok(hit.clone());
    }
    let text = candidate_formula(family, source).map_err(|e| Failure::msg(e.to_string()))?;
    let m = candidate_measure(family, source).map_err(|e| Failure::msg(e.to_string()))?;
    cache.lock().unwrap().insert((family, source), (text.clone(), m.clone()));
    Ok((text, m))
}

fn measure_t(m: &CyclotomicMeasure, order: usize) -> Result<PowerSeries, Failure> {
    m.t_series(order).map_err(|e| Failure::msg(e.to_string()))
}

fn graph_t_body(family: GraphFamily, order: usize) -> Outcome {
    let p = pipeline(family, order)?;
    series_match("theta by formula vs substitution", &p.theta_subst, &p.theta_formula)?;
    let xi = theorem_2_5_lookup(family).map_err(|e| Failure::msg(e.to_string()))?;
    series_match(&format!("T vs {xi}"), &xi.expand(order), &p.t)?;
    Ok(format!("T = {xi}"))
}

fn theta_body(family: GraphFamily, order: usize) -> Outcome {
    let p = pipeline(family, order)?;
    series_match("theta by formula vs substitution", &p.theta_subst, &p.theta_formula)?;
    if let Some(r) = (0..=order).find(|&r| !p.theta_formula.coeff(r).is_integer()) {
        return Err(Failure::at(
            "theta coefficient not an integer",
            format!("q^{r}"),
            "integer",
            p.theta_formula.coeff(r),
        ));
    }
    Ok("both routes agree; coefficients integral".into())
}

fn probability(what: &str, m: &CyclotomicMeasure) -> Result<(), Failure> {
    if let Some((j, w)) = m.atoms().find(|(_, w)| w.signum_real() < 0) {
        return Err(Failure::at(
            format!("{what}: negative weight"),
            format!("z^{j} on the {}-th roots", m.support_order()),
            ">= 0",
            w,
        ));
    }
    let mass = m.mass();
    if mass.as_rational().ok() != Some(Rational::from_integer(1.into())) {
        return Err(Failure::at(format!("{what}: mass is not 1"), "mass", 1, mass));
    }
    Ok(())
}

fn binary_measure_body(family: GraphFamily, order: usize) -> Outcome {
    let t = graph_t(family, order)?;
    let (text, m) = candidate(family, CandidateSource::Binary)?;
    series_match(&format!("T of {text}"), &t, &measure_t(&m, order)?)?;
    probability(&text, &m)?;
    Ok(text)
}

/// Real moments `k ≤ order/2` against loop counts.
fn real_moments_match(family: GraphFamily, m: &CyclotomicMeasure, order: usize) -> Result<(), Failure> {
    let count = order / 2;
    let loops = &pipeline(family, order)?.loops;
    let real = pushforward_real(m).map_err(|e| Failure::msg(e.to_string()))?;
    let moments = real
        .rational_moments(count + 1)
        .map_err(|e| Failure::msg(e.to_string()))?;
    for (k, (mk, ck)) in moments.iter().zip(loops).enumerate() {
        if mk != &Rational::from_integer(ck.clone()) {
            return Err(Failure::at("real moment vs loop count", format!("k = {k}"), ck, mk));
        }
    }
    Ok(())
}

fn graph_measure_body(family: GraphFamily, order: usize) -> Outcome {
    let t = graph_t(family, order)?;
    let (binary_text, binary) = candidate(family, CandidateSource::Binary)?;
    let (ternary_text, ternary) = candidate(family, CandidateSource::Ternary)?;
    series_match(&format!("T of {binary_text}"), &t, &measure_t(&binary, order)?)?;
    series_match(&format!("T of {ternary_text}"), &t, &measure_t(&ternary, order)?)?;
    measure_match(&format!("{binary_text} vs {ternary_text}"), &binary, &ternary)?;
    real_moments_match(family, &ternary, order)?;
    probability(&ternary_text, &ternary)?;
    Ok(ternary_text)
}

fn moment_axioms_body(family: GraphFamily, order: usize) -> Outcome {
    let (_, m) = candidate(family, CandidateSource::Ternary)?;
    m.check_symmetry().map_err(|e| Failure::msg(e.to_string()))?;
    for k in 0..=2 * order {
        let mk = m.moment(k);
        if k % 2 == 1 {
            if !mk.is_zero() {
                return Err(Failure::at("odd moment", format!("k = {k}"), 0, mk));
            }
            continue;
        }
        let twice = mk.as_rational().map(|r| r * Rational::from_integer(2.into()));
        if !twice.as_ref().is_ok_and(|r| r.is_integer()) {
            return Err(Failure::at("even moment not a half-integer", format!("k = {k}"), "n/2", mk));
        }
    }
    real_moments_match(family, &m, order)?;
    Ok(format!("moments 0..{} checked", 2 * order))
}

fn expansion_body(family: GraphFamily, order: usize) -> Outcome {
    let (_, m) = candidate(family, CandidateSource::Ternary)?;
    let n = m.minimal_order() / 2;
    let r = cyclotomic_expansion(&m, n).map_err(|e| Failure::msg(e.to_string()))?;
    let back = r.reconstruct();
    measure_match("reconstructed measure", &m, &back)?;
    series_match("reconstructed T", &measure_t(&m, order)?, &measure_t(&back, order)?)?;
    let terms: Vec<String> = r.terms().map(|(t, c)| format!("{c}*{t}")).collect();
    Ok(format!("n = {n}: {}", join_or_zero(&terms)))
}

fn level_body(family: GraphFamily, _order: usize) -> Outcome {
    let (_, m) = candidate(family, CandidateSource::Ternary)?;
    let r = level(&m).map_err(|e| Failure::msg(e.to_string()))?;
    let terms: Vec<String> = r.terms.iter().map(|(t, c)| format!("{c}*{t}")).collect();
    let details = format!("level {} at n = {}: {}", r.level, r.n, join_or_zero(&terms));
    if r.level > MAX_LEVEL {
        return Err(Failure::at("level too high", "level", MAX_LEVEL, r.level));
    }
    Ok(details)
}

fn join_or_zero(terms: &[String]) -> String {
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::CheckStatus;

    #[test]
    fn sample_graph_checks_pass() {
        for f in [GraphFamily::A(4), GraphFamily::E8, GraphFamily::Dtilde(6)] {
            let r = verify_graph_t(f, 32);
            assert_eq!(r.status, CheckStatus::Pass, "{r:?}");
        }
        let r = verify_graph_measure(GraphFamily::E7, 32);
        assert_eq!(r.status, CheckStatus::Pass, "{r:?}");
    }

    #[test]
    fn e6_level_is_at_most_three() {
        let r = level_body(GraphFamily::E6, 0).unwrap();
        assert!(r.starts_with("level"), "{r}");
    }
}
