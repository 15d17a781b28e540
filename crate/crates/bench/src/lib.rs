//! Criterion benchmarks for the constructions and metrics; see `benches/`.
