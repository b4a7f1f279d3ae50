//! Criterion benchmarks for the exact pipeline live in `benches/`;
//! run them with `cargo bench -p circmeasure-bench`.
