use std::collections::BTreeSet;

use circmeasure::verify::{registered_claims, registered_ids, run_matching, verify_identity, CheckStatus, SizeMatrix};

const MANIFEST: &str = include_str!("../claims.manifest");

fn manifest_claims() -> BTreeSet<String> {
    MANIFEST
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

#[test]
fn registry_matches_checked_in_manifest() {
    assert_eq!(registered_claims(), manifest_claims());
}

#[test]
fn every_claim_has_a_check() {
    let ids = registered_ids();
    for claim in manifest_claims() {
        assert!(ids.iter().any(|id| id.starts_with(&format!("{claim}/"))), "{claim}");
    }
}

#[test]
fn named_examples() {
    for id in ["prop5.6/gamma18", "prop8.5/beta3''", "prop5.4/n12-infeasible", "xi-identity/Dtilde"] {
        let r = verify_identity(id, 64).unwrap();
        assert_eq!(r.status, CheckStatus::Pass, "{r:?}");
    }
}

#[test]
fn reports_are_deterministic_up_to_timing() {
    let a = run_matching(16, &SizeMatrix::standard(), Some("thm*/E*")).unwrap();
    let b = run_matching(16, &SizeMatrix::standard(), Some("thm*/E*")).unwrap();
    assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
    assert!(a.checks.windows(2).all(|w| w[0].id < w[1].id));
}

#[test]
fn small_order_still_passes() {
    let r = run_matching(8, &SizeMatrix::standard(), Some("thm[278]*/*")).unwrap();
    assert!(r.is_success(), "{:?}", r.failures().collect::<Vec<_>>());
    assert!(r.passed > 100);
}

#[test]
fn markdown_lists_every_check() {
    let r = run_matching(8, &SizeMatrix::empty(), Some("prop5.4/*")).unwrap();
    let md = r.to_markdown();
    for c in &r.checks {
        assert!(md.contains(&format!("`{}`", c.id)));
    }
}
