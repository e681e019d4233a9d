//! Holds the `acceptance` test target (tests/acceptance.rs). It is a separate
//! package so that `cargo test --workspace` runs it after the library's own
//! tests, and a failing criterion does not hide their results.
