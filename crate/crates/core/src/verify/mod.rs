//! Registry of named checks over the whole pipeline, and the report they
//! produce.

mod catalog;
mod graph_checks;
mod report;

pub use graph_checks::{verify_graph_measure, verify_graph_t};
pub use report::{CheckResult, CheckStatus, Difference, VerificationReport};

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::exact::PowerSeries;
use crate::graphs::{FamilyTag, GraphError, GraphFamily};
use crate::measures::{lincomb, CyclotomicMeasure};
use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("no check named `{0}`")]
    UnknownCheckId(String),
    #[error("invalid check pattern: {0}")]
    BadPattern(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Graph parameters to run the per-graph checks on.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SizeMatrix {
    entries: BTreeMap<FamilyTag, Vec<usize>>,
}

impl SizeMatrix {
    pub fn empty() -> Self {
        SizeMatrix::default()
    }

    /// `A` with 2..=12 vertices, `D` with 3..=13, `Atilde` with 2..=16,
    /// `Dtilde` with index 4..=12, and the six exceptional graphs.
    pub fn standard() -> Self {
        let mut m = SizeMatrix::empty();
        m.insert(FamilyTag::A, 2..=12);
        m.insert(FamilyTag::D, 3..=13);
        m.insert(FamilyTag::Atilde, (1..=8).map(|n| 2 * n));
        m.insert(FamilyTag::Dtilde, 4..=12);
        for tag in FamilyTag::ALL.into_iter().filter(|t| t.is_exceptional()) {
            m.insert(tag, [0]);
        }
        m
    }

    pub fn insert(&mut self, tag: FamilyTag, params: impl IntoIterator<Item = usize>) {
        self.entries.entry(tag).or_default().extend(params);
    }

    /// Every valid graph listed, in a stable order.
    pub fn families(&self) -> Result<Vec<GraphFamily>, GraphError> {
        let mut out = BTreeSet::new();
        for (&tag, params) in &self.entries {
            for &p in params {
                out.insert(GraphFamily::new(tag, p)?);
            }
        }
        Ok(out.into_iter().collect())
    }
}

/// Outcome of running one check body.
pub(crate) type Outcome = Result<String, Failure>;

#[derive(Debug, Clone)]
pub(crate) struct Failure {
    message: String,
    difference: Option<Difference>,
}

impl Failure {
    pub(crate) fn msg(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            difference: None,
        }
    }

    pub(crate) fn at(
        message: impl Into<String>,
        location: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        Failure {
            message: message.into(),
            difference: Some(Difference {
                location: location.into(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            }),
        }
    }
}

/// Compares two series coefficient by coefficient.
pub(crate) fn series_match(what: &str, expected: &PowerSeries, actual: &PowerSeries) -> Result<(), Failure> {
    match expected.first_difference(actual) {
        Ok(None) => Ok(()),
        Ok(Some((k, e, a))) => Err(Failure::at(format!("{what} differs"), format!("q^{k}"), e, a)),
        Err(e) => Err(Failure::msg(format!("{what}: {e}"))),
    }
}

/// Compares two measures atom by atom.
pub(crate) fn measure_match(
    what: &str,
    expected: &CyclotomicMeasure,
    actual: &CyclotomicMeasure,
) -> Result<(), Failure> {
    if expected == actual {
        return Ok(());
    }
    let one = Rational::from_integer(1.into());
    let diff = lincomb(&[(one.clone(), expected.clone()), (-one, actual.clone())]);
    let (j, _) = diff.atoms().next().expect("unequal measures differ somewhere");
    let n = diff.support_order();
    let lifted = |m: &CyclotomicMeasure| m.lift(n).expect("lcm order").weight(j);
    Err(Failure::at(
        format!("{what}: measures differ"),
        format!("z^{j} on the {n}-th roots"),
        lifted(expected),
        lifted(actual),
    ))
}

pub(crate) struct Check {
    pub id: String,
    pub family: Option<GraphFamily>,
    pub run: Box<dyn Fn(usize) -> Outcome + Send + Sync>,
}

impl Check {
    pub(crate) fn new(id: impl Into<String>, run: impl Fn(usize) -> Outcome + Send + Sync + 'static) -> Self {
        Check {
            id: id.into(),
            family: None,
            run: Box::new(run),
        }
    }

    fn execute(&self, order: usize, skip: bool) -> CheckResult {
        if skip {
            return CheckResult {
                id: self.id.clone(),
                status: CheckStatus::Skipped,
                order,
                elapsed_ms: 0.0,
                details: "graph not in the size matrix".into(),
                difference: None,
            };
        }
        let start = Instant::now();
        let outcome = (self.run)(order);
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let (status, details, difference) = match outcome {
            Ok(details) => (CheckStatus::Pass, details, None),
            Err(f) => (CheckStatus::Fail, f.message, f.difference),
        };
        CheckResult {
            id: self.id.clone(),
            status,
            order,
            elapsed_ms,
            details,
            difference,
        }
    }
}

/// All checks: identity checks plus per-graph checks for the union of the
/// standard matrix and `matrix`.
fn registry(matrix: &SizeMatrix) -> Result<Vec<Check>, VerifyError> {
    let mut families: BTreeSet<GraphFamily> = SizeMatrix::standard().families()?.into_iter().collect();
    families.extend(matrix.families()?);
    let mut checks = catalog::identity_checks();
    for family in families {
        checks.extend(graph_checks::checks_for(family));
    }
    Ok(checks)
}

/// Sorted ids of every registered check for the standard matrix.
pub fn registered_ids() -> Vec<String> {
    let mut ids: Vec<String> = registry(&SizeMatrix::empty())
        .expect("standard matrix is valid")
        .into_iter()
        .map(|c| c.id)
        .collect();
    ids.sort();
    ids
}

/// Claim names: the part of each id before the first `/`.
pub fn registered_claims() -> BTreeSet<String> {
    registered_ids()
        .iter()
        .map(|id| id.split('/').next().unwrap().to_string())
        .collect()
}

/// Runs every registered check. Graph checks for graphs outside `matrix`
/// are reported as skipped.
pub fn run_all(order: usize, matrix: &SizeMatrix) -> Result<VerificationReport, VerifyError> {
    run_matching(order, matrix, None)
}

/// Like [`run_all`], restricted to ids matching a glob pattern.
pub fn run_matching(
    order: usize,
    matrix: &SizeMatrix,
    pattern: Option<&str>,
) -> Result<VerificationReport, VerifyError> {
    let pattern = pattern
        .map(glob::Pattern::new)
        .transpose()
        .map_err(|e| VerifyError::BadPattern(e.to_string()))?;
    let selected: BTreeSet<GraphFamily> = matrix.families()?.into_iter().collect();
    let checks: Vec<Check> = registry(matrix)?
        .into_iter()
        .filter(|c| pattern.as_ref().is_none_or(|p| p.matches(&c.id)))
        .collect();
    let results = checks
        .par_iter()
        .map(|c| {
            let skip = c.family.is_some_and(|f| !selected.contains(&f));
            c.execute(order, skip)
        })
        .collect();
    Ok(VerificationReport::new(order, results))
}

/// Runs one check by id. Per-graph ids accept any valid graph label,
/// e.g. `thm2.5/A20`.
pub fn verify_identity(id: &str, order: usize) -> Result<CheckResult, VerifyError> {
    let mut matrix = SizeMatrix::empty();
    if let Some((_, label)) = id.split_once('/') {
        if let Ok(f) = label.parse::<GraphFamily>() {
            matrix.insert(f.tag(), [f.param().unwrap_or(0)]);
        }
    }
    registry(&matrix)?
        .into_iter()
        .find(|c| c.id == id)
        .map(|c| c.execute(order, false))
        .ok_or_else(|| VerifyError::UnknownCheckId(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let ids = registered_ids();
        let set: BTreeSet<_> = ids.iter().collect();
        assert_eq!(set.len(), ids.len());
    }

    #[test]
    fn unknown_id() {
        assert_eq!(
            verify_identity("prop5.4/alpha5", 8).unwrap_err(),
            VerifyError::UnknownCheckId("prop5.4/alpha5".into())
        );
    }

    #[test]
    fn graph_label_outside_matrix() {
        let r = verify_identity("thm2.5/A20", 16).unwrap();
        assert_eq!(r.status, CheckStatus::Pass, "{r:?}");
    }

    #[test]
    fn empty_matrix_skips_graph_checks() {
        let r = run_matching(8, &SizeMatrix::empty(), Some("thm2.5/*")).unwrap();
        assert!(r.checks.iter().all(|c| c.status == CheckStatus::Skipped));
        assert!(r.skipped > 0);
        let r = run_matching(8, &SizeMatrix::empty(), Some("prop5.5/*")).unwrap();
        assert!(r.checks.iter().all(|c| c.status == CheckStatus::Pass));
    }

    #[test]
    fn bad_pattern() {
        assert!(matches!(
            run_matching(8, &SizeMatrix::empty(), Some("[")),
            Err(VerifyError::BadPattern(_))
        ));
    }
}
