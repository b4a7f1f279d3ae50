use std::hint::black_box;

use circmeasure::measures::{candidate_measure, level, pushforward_real, CandidateSource};
use circmeasure::transforms::{poincare_series, t_from_theta, theta_from_poincare_formula, theta_from_poincare_subst};
use circmeasure::verify::{run_matching, SizeMatrix};
use circmeasure::{build_ade, parse_measure_expr, theorem_2_5_lookup, GraphFamily};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn graph_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("theta");
    for order in [32usize, 64, 128] {
        let g = build_ade(GraphFamily::E8).unwrap();
        let f = poincare_series(&g.loop_counts(order));
        group.bench_with_input(BenchmarkId::new("loop_counts", order), &order, |b, &k| {
            b.iter(|| g.loop_counts(black_box(k)))
        });
        group.bench_with_input(BenchmarkId::new("formula", order), &order, |b, &k| {
            b.iter(|| theta_from_poincare_formula(black_box(&f), k))
        });
        group.bench_with_input(BenchmarkId::new("substitution", order), &order, |b, &k| {
            b.iter(|| t_from_theta(&theta_from_poincare_subst(black_box(&f), k)))
        });
    }
    group.finish();
}

fn closed_forms(c: &mut Criterion) {
    let xi = theorem_2_5_lookup(GraphFamily::E8).unwrap();
    c.bench_function("xi_expand/E8/256", |b| b.iter(|| black_box(&xi).expand(256)));
}

fn measures(c: &mut Criterion) {
    let e8 = candidate_measure(GraphFamily::E8, CandidateSource::Ternary).unwrap();
    c.bench_function("measure/parse_e8", |b| {
        b.iter(|| parse_measure_expr(black_box("(2*alpha''_5 + 2*gamma''_5 - d''_1)/3")).unwrap())
    });
    c.bench_function("measure/t_series_e8/64", |b| b.iter(|| black_box(&e8).t_series(64).unwrap()));
    c.bench_function("measure/pushforward_e8", |b| b.iter(|| pushforward_real(black_box(&e8)).unwrap()));
    c.bench_function("measure/level_e8", |b| b.iter(|| level(black_box(&e8)).unwrap()));
}

fn registry(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("identities/64", |b| {
        b.iter(|| run_matching(64, &SizeMatrix::empty(), Some("prop*/*")).unwrap())
    });
    group.finish();
}

criterion_group!(benches, graph_pipeline, closed_forms, measures, registry);
criterion_main!(benches);
