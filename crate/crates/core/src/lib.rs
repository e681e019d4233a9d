//! Simulation and analysis of the self-adjusting (1,λ)-EA with the (1:s+1)
//! success rule on static and dynamic monotone pseudo-Boolean functions.
//!
//! * [`bits`], [`rng`], [`permutation`]: bit strings, standard bit mutation and
//!   the deterministic stream contract every other module draws from.
//! * [`fitness`]: OneMax, BinVal, Binary, Dynamic BinVal (plus an adversarial
//!   variant) and HotTopic behind one comparator.
//! * [`engine`]: the algorithm itself and its per-generation trace.
//! * [`analytics`]: exact and Monte Carlo improvement probabilities, drift
//!   decompositions, the `h`/`G` potential and the triple solver.
//! * [`experiments`]: campaigns, per-level aggregation, smoothing, CSV output,
//!   parameter sweeps and the OneMax/Dynamic BinVal dichotomy.
//! * [`cli`]: the `onelambda` command line front end.

pub mod analytics;
pub mod bits;
pub mod cli;
pub mod engine;
pub mod experiments;
pub mod fitness;
pub mod format;
pub mod permutation;
pub mod rng;

pub use bits::{mutate, onemax, zeromax, BitString, MutationParams, Mutator};
pub use engine::{round_nearest, run, AlgParams, AlgState, GenerationRecord, Outcome, RunTrace, SaOneLambdaEa, StartSpec};
pub use fitness::{DynamicFitness, FunctionKind};
pub use permutation::{sample_permutation, Permutation};
pub use rng::{RngHandle, SeedLineage};
