//! Criterion benchmarks for doily-core live in `benches/`.
