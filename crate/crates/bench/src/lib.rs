//! Criterion benchmarks for the policy simulators and estimators; see
//! `benches/`.
