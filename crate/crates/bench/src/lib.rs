//! Criterion benchmarks for xflow live under `benches/`.
