//! Benchmark crate; see `benches/engines.rs`.
