//! Criterion benchmarks for bianchi-core; see `benches/`.
