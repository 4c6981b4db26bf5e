//! Benchmarks for maxab-core live under `benches/`.
