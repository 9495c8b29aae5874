//! Intentionally empty; see `benches/kernels.rs` for the benchmark suite.
