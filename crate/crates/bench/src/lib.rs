//! Criterion benchmarks for `midhankel`; see `benches/operators.rs`.
