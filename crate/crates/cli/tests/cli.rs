use std::process::{Command, Output};

use serde_json::Value;

fn circmeasure(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circmeasure"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = circmeasure(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(include_str!("../schema/output.schema.json")).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_conforms(v: &Value) {
    if let Err(e) = validator().validate(v) {
        panic!("{e}\n{v:#}");
    }
}

/// Integer series of `Π(1 ∓ q^a) / Π(1 ∓ q^b)`, by long division.
fn xi_oracle(num: &[i64], den: &[i64], order: usize) -> Vec<i64> {
    let factor = |n: i64| {
        let mut p = vec![0i64; order + 1];
        p[0] = 1;
        let e = n.unsigned_abs() as usize;
        if e <= order {
            p[e] = if n > 0 { -1 } else { 1 };
        }
        p
    };
    let mul = |a: &[i64], b: &[i64]| {
        let mut c = vec![0i64; order + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take(order + 1 - i) {
                c[i + j] += x * y;
            }
        }
        c
    };
    let mut top = vec![0i64; order + 1];
    top[0] = 1;
    for &n in num {
        top = mul(&top, &factor(n));
    }
    let mut bottom = vec![0i64; order + 1];
    bottom[0] = 1;
    for &n in den {
        bottom = mul(&bottom, &factor(n));
    }
    let mut q = vec![0i64; order + 1];
    for k in 0..=order {
        let acc: i64 = (1..=k).map(|j| bottom[j] * q[k - j]).sum();
        q[k] = top[k] - acc;
    }
    q
}

fn csv_ints(s: &str) -> Vec<i64> {
    s.trim_end().split(',').map(|x| x.parse().unwrap()).collect()
}

#[test]
fn e7_tseries_csv_matches_closed_form() {
    let out = stdout(&["graph-tseries", "--family", "E7", "--order", "16", "--format", "csv"]);
    assert!(out.ends_with('\n') && !out.contains('\r'));
    let got = csv_ints(&out);
    assert_eq!(got.len(), 17);
    // (1 - q^12) / ((1 - q^4)(1 + q^9)), negative entries meaning 1 + q^n
    assert_eq!(got, xi_oracle(&[12], &[4, -9], 16));
}

#[test]
fn family_and_param_spelling() {
    let a = stdout(&["graph-loops", "--family", "Dtilde", "--param", "6", "--order", "8"]);
    let b = stdout(&["graph-loops", "--family", "Dtilde6", "--order", "8"]);
    assert_eq!(a, b);
    // A3 rooted at an end: c_k = 2^(k-1)
    let a3 = stdout(&["graph-loops", "--family", "A3", "--order", "5", "--format", "csv"]);
    assert_eq!(a3, "1,1,2,4,8,16\n");
}

#[test]
fn xi_expand_spelling_and_identity() {
    let a = stdout(&["xi-expand", "--expr", "xi(2+:3)", "--order", "40", "--format", "csv"]);
    let b = stdout(&["xi-expand", "--expr", "xi(4:2,3)", "--order", "40", "--format", "csv"]);
    assert_eq!(a, b);
    assert_eq!(csv_ints(&a), xi_oracle(&[-2], &[3], 40));
    let poly = stdout(&["xi-expand", "--expr", "xi(3:)", "--order", "5"]);
    assert_eq!(poly, "xi(3:) = 1 - q^3 + O(q^6)\n");
}

#[test]
fn moments_of_d1() {
    let text = stdout(&["measure-moments", "--expr", "d_1", "--count", "4"]);
    assert_eq!(text, "m_0 = 1\nm_1 = 0\nm_2 = 1\nm_3 = 0\nm_4 = 1\n");
    let csv = stdout(&["measure-moments", "--expr", "d_1", "--count", "4", "--format", "csv"]);
    assert_eq!(csv, "k,exact,approx\n0,1,1\n1,0,0\n2,1,1\n3,0,0\n4,1,1\n");
}

#[test]
fn e7_measure_expression_has_the_graph_t_series() {
    let graph = stdout(&["graph-tseries", "--family", "E7", "--order", "40", "--format", "csv"]);
    let measure = stdout(&[
        "measure-tseries",
        "--expr",
        "(2*beta''_3 + d'_1)/3",
        "--order",
        "40",
        "--format",
        "csv",
    ]);
    assert_eq!(graph, measure);
}

#[test]
fn signed_combination_equals_named_measure() {
    let a = json(&["measure-show", "--expr", "2*d_2 - d_1"]);
    let b = json(&["measure-show", "--expr", "gamma_2"]);
    assert_eq!(a["atoms"], b["atoms"]);
    assert_eq!(a["support_order"], 4);
}

#[test]
fn irrational_weights_print_exact_and_decimal() {
    let v = json(&["measure-show", "--expr", "alpha_12"]);
    let w1 = &v["atoms"].as_array().unwrap().iter().find(|a| a["exponent"] == 1).unwrap()["weight"];
    assert_eq!(w1["approx"].as_f64().unwrap(), 0.00558227484231506);
    assert!(w1["exact"].as_str().unwrap().contains("z24"));
    let text = stdout(&["measure-show", "--expr", "alpha_12"]);
    assert!(text.contains("≈ 0.00558227484231506"), "{text}");
    assert!(text.lines().any(|l| l == "z^6: 1/12"));
}

#[test]
fn every_json_output_conforms_to_schema() {
    let outputs = [
        json(&["graph-loops", "--family", "E6", "--order", "6"]),
        json(&["graph-tseries", "--family", "Etilde7", "--order", "6"]),
        json(&["xi-expand", "--expr", "xi''(5+:2)", "--order", "6"]),
        json(&["measure-show", "--expr", "d''_1"]),
        json(&["measure-moments", "--expr", "beta'_9", "--count", "3"]),
        json(&["measure-tseries", "--expr", "d_3", "--order", "6"]),
        json(&["measure-pushforward", "--expr", "(2*beta''_3 + d'_1)/3"]),
        json(&["expand", "--expr", "alpha_5"]),
        json(&["level", "--expr", "alpha_12"]),
        json(&["verify", "--order", "8", "--only", "prop5.5/*"]),
    ];
    for v in &outputs {
        assert_conforms(v);
    }
}

#[test]
fn level_and_expansion() {
    let v = json(&["level", "--expr", "alpha_12"]);
    assert_eq!(v["level"], 1);
    assert_eq!(v["terms"][0]["label"], "Re(1-q^2)_12");
    let csv = stdout(&["expand", "--expr", "d_4 - d_2/2", "--format", "csv"]);
    assert!(csv.starts_with("l,m,term,coefficient\n"), "{csv}");
}

#[test]
fn pushforward_of_e7_measure_has_loop_count_moments() {
    let v = json(&["measure-pushforward", "--expr", "(2*beta''_3 + d'_1)/3"]);
    let atoms = v["atoms"].as_array().unwrap();
    let loops = json(&["graph-loops", "--family", "E7", "--order", "6"]);
    for k in 0..=6 {
        let m: f64 = atoms
            .iter()
            .map(|a| a["weight"]["approx"].as_f64().unwrap() * a["location"]["approx"].as_f64().unwrap().powi(k))
            .sum();
        let c: f64 = loops["coefficients"][k as usize].as_str().unwrap().parse().unwrap();
        assert!((m - c).abs() < 1e-9 * c.max(1.0), "k = {k}: {m} vs {c}");
    }
}

#[test]
fn usage_errors_exit_2_with_position() {
    let out = circmeasure(&["measure-show", "--expr", "d_1 + * d_2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("      ^ at offset 6"), "{err}");

    let out = circmeasure(&["measure-show", "--expr", "d''''_2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = circmeasure(&["xi-expand", "--expr", "xi(3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = circmeasure(&["graph-loops", "--family", "F4"]);
    assert_eq!(out.status.code(), Some(2));

    let out = circmeasure(&["verify", "--only", "["]);
    assert_eq!(out.status.code(), Some(2));

    let out = circmeasure(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_subset_passes() {
    let out = circmeasure(&["verify", "--order", "16", "--only", "thm2.5/A20", "--graphs", "A20"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.contains("| `thm2.5/A20` | pass |"), "{csv}");
}

/// The registry reproduces two printed identities as false; the full run
/// therefore exits 1 and names exactly those checks.
#[test]
fn full_verify_reports_exactly_the_misprints() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = circmeasure(&["verify", "--order", "64", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary.starts_with("order 64: "), "{summary}");

    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_conforms(&report);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["prop5.6/gamma4", "prop5.6/gamma8"]);
    for id in ["discrepancy/prop5.6-gamma4", "discrepancy/prop5.6-gamma8", "discrepancy/Etilde-constant"] {
        let c = report["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap();
        assert_eq!(c["status"], "pass", "{id}");
    }
}

#[test]
fn verify_markdown_and_csv_reports() {
    let dir = tempfile::tempdir().unwrap();
    let md = dir.path().join("report.md");
    let out = circmeasure(&["verify", "--order", "8", "--only", "prop8.*", "--out", md.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&md).unwrap();
    assert!(text.starts_with("# Verification report"));
    assert!(text.contains("`prop8.5/beta3''`"));

    let csv = stdout(&["verify", "--order", "8", "--only", "prop8.*", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "id,status,order,elapsed_ms,details,location,expected,actual");
    assert_eq!(lines.count(), 16);
}
