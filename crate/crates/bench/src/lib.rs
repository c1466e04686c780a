//! Criterion benchmarks for the `unruh-otto` crate live under `benches/`.
