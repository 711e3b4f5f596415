//! Criterion benchmarks for the complexity engine; see `benches/`.
