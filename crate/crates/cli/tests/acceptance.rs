//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Runs the full check registry once at order 64 over the default size
//! matrix and groups the results by criterion. A few criteria add an
//! oracle computed here from scratch.

use std::process::ExitCode;
use std::time::Instant;

use circmeasure::measures::{etilde_level1_form, named_measure, BaseMeasure, Density};
use circmeasure::transforms::graph_t_series;
use circmeasure::verify::{run_all, CheckResult, CheckStatus, SizeMatrix, VerificationReport};
use circmeasure::{CyclotomicNumber, GraphFamily, Rational};

const ORDER: usize = 64;

struct Criterion {
    number: usize,
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(number: usize, name: &'static str) -> Self {
        Criterion {
            number,
            name,
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Every check whose claim is in `claims` must pass.
    fn claims(mut self, report: &VerificationReport, claims: &[&str]) -> Self {
        for c in select(report, claims) {
            self.record(c);
        }
        self
    }

    fn ids(mut self, report: &VerificationReport, ids: &[&str]) -> Self {
        for id in ids {
            match report.get(id) {
                Some(c) => self.record(c),
                None => self.failures.push(format!("{id}: not registered")),
            }
        }
        self
    }

    fn record(&mut self, c: &CheckResult) {
        self.checked += 1;
        if c.status != CheckStatus::Pass {
            let mut line = format!("{} [{:?}] {}", c.id, c.status, c.details);
            if let Some(d) = &c.difference {
                line += &format!(" (at {}: expected {}, got {})", d.location, d.expected, d.actual);
            }
            self.failures.push(line);
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        self.checked += 1;
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn print(&self) -> bool {
        let pass = self.failures.is_empty() && self.checked > 0;
        println!(
            "criterion {} {}: {} ({} checks)",
            self.number,
            self.name,
            if pass { "PASS" } else { "FAIL" },
            self.checked
        );
        for f in &self.failures {
            println!("    failed: {f}");
        }
        for n in &self.notes {
            println!("    note: {n}");
        }
        pass
    }
}

fn select<'a>(report: &'a VerificationReport, claims: &[&str]) -> Vec<&'a CheckResult> {
    report
        .checks
        .iter()
        .filter(|c| claims.iter().any(|p| c.id.split('/').next() == Some(p)))
        .collect()
}

/// Each graph in the default matrix has a passing check under `claim`.
fn covers_matrix(c: &mut Criterion, report: &VerificationReport, claim: &str) {
    for f in SizeMatrix::standard().families().unwrap() {
        let id = format!("{claim}/{f}");
        c.expect(report.get(&id).is_some(), format!("{id}: missing"));
    }
}

fn graph_series(report: &VerificationReport) -> Criterion {
    let mut c = Criterion::new(1, "T series of every default graph equals its closed form").claims(report, &["thm2.5"]);
    covers_matrix(&mut c, report, "thm2.5");
    c
}

fn theta(report: &VerificationReport) -> Criterion {
    let mut c = Criterion::new(2, "theta by both routes, integral coefficients").claims(report, &["theta"]);
    covers_matrix(&mut c, report, "theta");
    c
}

fn circular_measures(report: &VerificationReport) -> Criterion {
    let mut c = Criterion::new(3, "circular measures of the ADE graphs")
        .claims(report, &["thm7.1", "thm8.7"])
        .ids(report, &["discrepancy/Etilde-constant"]);
    covers_matrix(&mut c, report, "thm7.1");
    covers_matrix(&mut c, report, "thm8.7");
    // Which constant in alpha_{l+1} + (d_l - d_{l+1}) * c reproduces each Ẽ graph.
    for (l, f) in [(2, GraphFamily::E6tilde), (3, GraphFamily::E7tilde), (5, GraphFamily::E8tilde)] {
        let t = graph_t_series(f, ORDER).unwrap();
        let winners: Vec<String> = [(1, 2), (1, 3)]
            .into_iter()
            .filter(|&(p, q)| {
                let m = etilde_level1_form(l, &Rational::new(p.into(), q.into()));
                m.t_series(ORDER).unwrap() == t
            })
            .map(|(p, q)| format!("{p}/{q}"))
            .collect();
        c.expect(winners == ["1/2"], format!("{f}: constants matching = {winners:?}"));
        c.notes.push(format!("{f}: constant {}", winners.join(", ")));
    }
    c
}

fn weight_table(report: &VerificationReport) -> Criterion {
    let mut c = Criterion::new(4, "alpha_12 weights and common-weight lists").ids(
        report,
        &[
            "prop5.4/alpha12-weights",
            "prop5.4/weights-n2",
            "prop5.4/weights-n3",
            "prop5.4/weights-n4",
            "prop5.4/weights-n6",
        ],
    );
    // sqrt 3 = 2 cos(pi/6) = z12 + z12^-1
    let sqrt3 = &CyclotomicNumber::root_of_unity(12, 1) + &CyclotomicNumber::root_of_unity(12, -1);
    let r = |p: i64, q: i64| CyclotomicNumber::rational(12, Rational::new(p.into(), q.into()));
    let over48 = |x: CyclotomicNumber| x.scale(&Rational::new(1.into(), 48.into()));
    let expected = [
        r(0, 1),
        over48(&r(2, 1) - &sqrt3),
        r(1, 48),
        r(1, 24),
        r(3, 48),
        over48(&r(2, 1) + &sqrt3),
        r(1, 12),
    ];
    let alpha12 = named_measure(Density::Alpha, BaseMeasure::D, 12);
    assert_eq!(alpha12.support_order(), 24);
    for (k, e) in expected.iter().enumerate() {
        let w = alpha12.weight(k);
        c.expect(&w == e, format!("alpha_12 at w^{k}: expected {e}, got {w}"));
    }
    c
}

fn identity_catalog(report: &VerificationReport) -> Criterion {
    let claims = [
        "prop5.4", "prop5.5", "prop5.6", "prop5.7", "prop6.5", "prop6.6", "prop6.7", "prop6.8", "prop8.3", "prop8.4",
        "prop8.5", "prop8.6", "xi-identity",
    ];
    let mut c = Criterion::new(5, "identity catalog").claims(report, &claims);
    for id in ["discrepancy/prop5.6-gamma4", "discrepancy/prop5.6-gamma8"] {
        if let Some(r) = report.get(id) {
            if r.status == CheckStatus::Pass {
                c.notes.push(format!("{id}: {}", r.details));
            }
        }
    }
    c
}

fn measure_axioms(report: &VerificationReport) -> Criterion {
    let mut c = Criterion::new(6, "symmetry, odd and half-integral moments, loop-count moments").claims(report, &["prop3.3"]);
    covers_matrix(&mut c, report, "prop3.3");
    c
}

fn expansion(report: &VerificationReport) -> Criterion {
    let mut c = Criterion::new(7, "expansion round trip, levels, alpha_12 infeasibility")
        .claims(report, &["thm4.6", "level"])
        .ids(report, &["level/uniform", "level/alpha", "prop5.4/n12-infeasible"]);
    covers_matrix(&mut c, report, "thm4.6");
    covers_matrix(&mut c, report, "level");
    c
}

fn closed_forms(report: &VerificationReport) -> Criterion {
    let claims = ["lemma4.4", "lemma6.2", "prop4.5", "prop6.3", "prop5.3", "prop6.4"];
    let mut c = Criterion::new(8, "closed-form T series for n <= 20").claims(report, &claims);
    for claim in claims {
        for n in 1..=20 {
            let id = format!("{claim}/n{n:02}");
            c.expect(report.get(&id).is_some(), format!("{id}: missing"));
        }
    }
    c
}

fn main() -> ExitCode {
    let start = Instant::now();
    let report = run_all(ORDER, &SizeMatrix::standard()).expect("default matrix is valid");
    println!(
        "registry at order {ORDER}: {} passed, {} failed, {} skipped in {:.1}s",
        report.passed,
        report.failed,
        report.skipped,
        start.elapsed().as_secs_f64()
    );
    let criteria = [
        graph_series(&report),
        theta(&report),
        circular_measures(&report),
        weight_table(&report),
        identity_catalog(&report),
        measure_axioms(&report),
        expansion(&report),
        closed_forms(&report),
    ];
    let passed = criteria.iter().map(Criterion::print).filter(|&p| p).count();
    println!(
        "acceptance: {passed}/{} criteria pass ({:.1}s)",
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
