//! Criterion benchmarks for `qcalc-core`; see `benches/`.
