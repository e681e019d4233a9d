//! Pass thresholds for the desk-scale dichotomy (`λ = 8`, `n = 1000`,
//! `η = 0.03`, 20 runs, budget `500n`, λ starting at 8).
//!
//! Regenerate the pilot table with
//! `cargo run --release --example pilot_dichotomy -- 1 30`. Over master
//! seeds 1..=30 (600 runs per function) it gave:
//!
//! ```text
//! onemax     found 600/600, every seed 20/20, mean generations per seed 838..972
//! dynbinval  found  50/600, per seed 0..5 of 20 (3 or more on 8 of 30 seeds)
//! ```
//!
//! Dynamic BinVal escapes in about 8% of runs at this size, so a limit of
//! 2 of 20 would fail on roughly a quarter of seeds. The limit is instead the
//! largest count that still keeps the OneMax/Dynamic BinVal separation at
//! 0.8 when OneMax succeeds in every run. Seed 0 is held out of the pilot
//! and used for acceptance.

/// Master seed for the acceptance run; not part of the pilot.
pub const ACCEPTANCE_SEED: u64 = 0;
/// OneMax must reach the optimum in at least this many of 20 runs.
pub const ONEMAX_MIN_FOUND: usize = 18;
/// Dynamic BinVal may reach the optimum in at most this many of 20 runs.
pub const DBV_MAX_FOUND: usize = 4;
/// Mean generations of successful OneMax runs, in units of `n`.
pub const ONEMAX_MAX_MEAN_GENERATIONS_PER_N: f64 = 50.0;
/// OneMax fraction found minus Dynamic BinVal fraction found.
pub const MIN_SEPARATION: f64 = 0.8;
