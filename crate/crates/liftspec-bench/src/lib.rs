//! Benchmarks only; see benches/routes.rs.
