//! Benchmark-only crate; see `benches/spectra.rs` for the measurements.
