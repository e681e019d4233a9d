//! The self-adjusting (1,λ)-EA with the (1:s+1) success rule.
//!
//! One generation consumes randomness from the run's stream in this order:
//!
//! 1. `begin_epoch` on the fitness (one word for Dynamic BinVal, none for static kinds);
//! 2. for each offspring `j = 0..round(λ)`, one flip set (see [`crate::bits`]);
//! 3. if several offspring tie for best, one `below_u32(#ties)` draw picking
//!    among them in offspring-index order.
//!
//! Offspring are kept as flip sets relative to the parent; only the selected
//! one is applied.

use std::cmp::Ordering;
use std::fmt;
use std::io::{self, Write};

use thiserror::Error;

use crate::bits::{BitString, BitsError, MutationParams, Mutator};
use crate::fitness::{DynamicFitness, FunctionKind};
use crate::format::sig9;
use crate::rng::{RngHandle, SeedLineage};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Bits(#[from] BitsError),
    #[error("fitness has dimension {fitness}, parameters say n = {params}")]
    Dimension { fitness: usize, params: usize },
}

/// Initial search point.
#[derive(Debug, Clone, PartialEq)]
pub enum StartSpec {
    AllZeros,
    Explicit(BitString),
    /// Exactly this many zero-bits at uniformly random positions.
    RandomZeros(usize),
}

impl fmt::Display for StartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AllZeros => f.write_str("zeros"),
            Self::Explicit(x) => write!(f, "bits:{x}"),
            Self::RandomZeros(z) => write!(f, "random-zeros:{z}"),
        }
    }
}

impl std::str::FromStr for StartSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "zeros" || s == "all-zeros" {
            return Ok(Self::AllZeros);
        }
        if let Some(bits) = s.strip_prefix("bits:") {
            return bits.parse().map(Self::Explicit).map_err(|e: BitsError| e.to_string());
        }
        if let Some(z) = s.strip_prefix("random-zeros:") {
            return z.parse().map(Self::RandomZeros).map_err(|_| format!("bad zero count {z:?}"));
        }
        Err(format!("unknown start spec {s:?} (zeros | bits:<01..> | random-zeros:<Z>)"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgParams {
    pub n: usize,
    /// Success ratio `s`; the target success rate is `1/(s+1)`.
    pub s: f64,
    /// Update strength `F`.
    pub update_strength: f64,
    /// Mutation rate numerator; the per-bit rate is `c/n`.
    pub c: f64,
    pub lambda_init: f64,
    /// Maximum number of generations.
    pub budget: u64,
    pub start: StartSpec,
    pub seed: SeedLineage,
    /// Stop with [`Outcome::SafetyTripped`] when `λ > n²` or a step moves `Z` by more than `ceil(ln n) + safety_slack`.
    pub safety: bool,
    pub safety_slack: usize,
}

impl AlgParams {
    /// Defaults: `c = 1`, `λ_init = 1`, budget `500 n`, all-zeros start, seed `(0, 0)`, safety off.
    pub fn new(n: usize, s: f64, update_strength: f64) -> Self {
        Self {
            n,
            s,
            update_strength,
            c: 1.0,
            lambda_init: 1.0,
            budget: 500 * n as u64,
            start: StartSpec::AllZeros,
            seed: SeedLineage { master: 0, stream: 0 },
            safety: false,
            safety_slack: 4,
        }
    }

    pub fn with_seed(mut self, master: u64, stream: u64) -> Self {
        self.seed = SeedLineage { master, stream };
        self
    }

    pub fn with_start(mut self, start: StartSpec) -> Self {
        self.start = start;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |m: String| Err(EngineError::Config(m));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if !(self.s > 0.0 && self.s.is_finite()) {
            return bad(format!("success ratio s = {} must be positive", self.s));
        }
        if !(self.update_strength > 1.0 && self.update_strength.is_finite()) {
            return bad(format!("update strength F = {} must exceed 1", self.update_strength));
        }
        if !(self.lambda_init >= 1.0 && self.lambda_init.is_finite()) {
            return bad(format!("lambda_init = {} must be at least 1", self.lambda_init));
        }
        if self.budget == 0 {
            return bad("budget must be at least 1 generation".into());
        }
        MutationParams::new(self.c, self.n)?;
        match &self.start {
            StartSpec::Explicit(x) if x.len() != self.n => bad(format!("start string has length {}, n = {}", x.len(), self.n)),
            StartSpec::RandomZeros(z) if *z > self.n => bad(format!("cannot start with {z} zero-bits when n = {}", self.n)),
            _ => Ok(()),
        }
    }

    /// Largest tolerated `|Z^t - Z^{t+1}|` when safety checks are on.
    pub fn step_bound(&self) -> usize {
        ((self.n as f64).ln().ceil() as usize).max(1) + self.safety_slack
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgState {
    pub t: u64,
    pub x: BitString,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationRecord {
    pub t: u64,
    pub z_before: usize,
    pub z_after: usize,
    pub onemax_after: usize,
    pub lambda_before: f64,
    pub offspring: u64,
    pub success: bool,
    /// Offspring created so far, plus one per generation for dynamic kinds (parent re-evaluation).
    pub evaluations: u64,
}

impl GenerationRecord {
    pub fn z_decrease(&self) -> i64 {
        self.z_before as i64 - self.z_after as i64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    OptimumFound { t: u64 },
    BudgetExhausted,
    SafetyTripped { t: u64, reason: String },
}

impl Outcome {
    pub fn found(&self) -> bool {
        matches!(self, Self::OptimumFound { .. })
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OptimumFound { t } => write!(f, "optimum@{t}"),
            Self::BudgetExhausted => f.write_str("budget"),
            Self::SafetyTripped { t, reason } => write!(f, "safety@{t}:{reason}"),
        }
    }
}

/// Aggregate facts about a finished run, available without keeping its records.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub outcome: Outcome,
    pub generations: u64,
    pub evaluations: u64,
    pub final_onemax: usize,
    pub max_onemax: usize,
    pub final_lambda: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub params: AlgParams,
    pub kind: FunctionKind,
    pub records: Vec<GenerationRecord>,
    pub summary: RunSummary,
}

pub const TRACE_CSV_HEADER: &str = "t,Z,onemax,lambda,offspring,success,cum_evals";

impl RunTrace {
    pub fn outcome(&self) -> &Outcome {
        &self.summary.outcome
    }

    /// One row per generation `t` (from 0). `Z` and `onemax` describe the
    /// parent after the generation; `lambda` and `offspring` are the values the
    /// generation was run with; `cum_evals` counts through its end.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{TRACE_CSV_HEADER}")?;
        for r in &self.records {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.t,
                r.z_after,
                r.onemax_after,
                sig9(r.lambda_before),
                r.offspring,
                r.success as u8,
                r.evaluations
            )?;
        }
        Ok(())
    }
}

/// `round(λ)`: the nearest integer, halves rounded up.
#[inline]
pub fn round_nearest(lambda: f64) -> u64 {
    debug_assert!(lambda >= 1.0);
    (lambda + 0.5).floor() as u64
}

/// Reusable offspring buffers: generation plus argmax selection with random tie-breaking.
#[derive(Debug, Default, Clone)]
pub struct OffspringPool {
    flips: Vec<u32>,
    offsets: Vec<usize>,
    scratch: Vec<u32>,
    maximizers: Vec<usize>,
}

impl OffspringPool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn offspring(&self, i: usize) -> &[u32] {
        &self.flips[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn len(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Creates `count` offspring of `parent` and returns the index of the
    /// selected one. The epoch must already be installed.
    pub fn generate_and_select(
        &mut self,
        parent: &BitString,
        count: u64,
        mutator: &Mutator,
        fitness: &DynamicFitness,
        rng: &mut RngHandle,
    ) -> usize {
        debug_assert!(count >= 1);
        self.flips.clear();
        self.offsets.clear();
        self.offsets.push(0);
        for _ in 0..count {
            mutator.sample_flips(rng, &mut self.scratch);
            self.flips.extend_from_slice(&self.scratch);
            self.offsets.push(self.flips.len());
        }
        self.maximizers.clear();
        self.maximizers.push(0);
        for j in 1..count as usize {
            let best = self.maximizers[0];
            match fitness.compare_flips(parent, self.offspring(j), self.offspring(best)) {
                Ordering::Greater => {
                    self.maximizers.clear();
                    self.maximizers.push(j);
                }
                Ordering::Equal => self.maximizers.push(j),
                Ordering::Less => {}
            }
        }
        if self.maximizers.len() == 1 {
            self.maximizers[0]
        } else {
            self.maximizers[rng.below_u32(self.maximizers.len() as u32) as usize]
        }
    }
}

/// A running instance of the algorithm on one function.
#[derive(Debug, Clone)]
pub struct SaOneLambdaEa {
    params: AlgParams,
    fitness: DynamicFitness,
    mutator: Mutator,
    rng: RngHandle,
    state: AlgState,
    growth: f64,
    evaluations: u64,
    pool: OffspringPool,
}

impl SaOneLambdaEa {
    /// Seeds the run's stream from `params.seed` and draws the start point from it.
    pub fn new(params: AlgParams, fitness: DynamicFitness) -> Result<Self, EngineError> {
        params.validate()?;
        let mut rng = RngHandle::from_lineage(params.seed);
        let x = match &params.start {
            StartSpec::AllZeros => BitString::all_zeros(params.n),
            StartSpec::Explicit(x) => x.clone(),
            StartSpec::RandomZeros(z) => BitString::random_with_zeros(params.n, *z, &mut rng)?,
        };
        let state = AlgState {
            t: 0,
            x,
            lambda: params.lambda_init,
        };
        Self::with_state(params, fitness, state, rng)
    }

    /// Resumes from an explicit state and stream.
    pub fn with_state(params: AlgParams, fitness: DynamicFitness, state: AlgState, rng: RngHandle) -> Result<Self, EngineError> {
        params.validate()?;
        if fitness.dimension() != params.n {
            return Err(EngineError::Dimension {
                fitness: fitness.dimension(),
                params: params.n,
            });
        }
        let mutator = Mutator::new(MutationParams::new(params.c, params.n)?)?;
        let growth = growth_factor(params.update_strength, params.s);
        Ok(Self {
            params,
            fitness,
            mutator,
            rng,
            state,
            growth,
            evaluations: 0,
            pool: OffspringPool::new(),
        })
    }

    pub fn state(&self) -> &AlgState {
        &self.state
    }

    pub fn params(&self) -> &AlgParams {
        &self.params
    }

    pub fn fitness(&self) -> &DynamicFitness {
        &self.fitness
    }

    /// One generation: epoch, offspring, selection, λ update, comma replacement.
    pub fn step(&mut self) -> GenerationRecord {
        let Self {
            params,
            fitness,
            mutator,
            rng,
            state,
            growth,
            evaluations,
            pool,
        } = self;
        let z_before = state.x.zeros();
        let lambda_before = state.lambda;
        fitness.begin_epoch(&state.x, rng);
        let count = round_nearest(lambda_before);
        let chosen = pool.generate_and_select(&state.x, count, mutator, fitness, rng);
        let flips = pool.offspring(chosen);
        let success = fitness.compare_flips(&state.x, flips, &[]) == Ordering::Greater;
        state.lambda = update_lambda(lambda_before, success, params.update_strength, *growth);
        state.x.apply_flips(flips);
        *evaluations += count + fitness.kind().is_dynamic() as u64;
        let record = GenerationRecord {
            t: state.t,
            z_before,
            z_after: state.x.zeros(),
            onemax_after: state.x.ones(),
            lambda_before,
            offspring: count,
            success,
            evaluations: *evaluations,
        };
        state.t += 1;
        record
    }

    fn safety_violation(&self, rec: &GenerationRecord) -> Option<String> {
        if !self.params.safety {
            return None;
        }
        let n = self.params.n as f64;
        if self.state.lambda > n * n {
            return Some(format!("lambda {} exceeds n^2", sig9(self.state.lambda)));
        }
        let moved = rec.z_decrease().unsigned_abs() as usize;
        if moved > self.params.step_bound() {
            return Some(format!("|Z step| = {moved} exceeds {}", self.params.step_bound()));
        }
        None
    }

    /// Runs until the optimum, the budget, or a safety trip, handing each record to `observe`.
    pub fn run_observed<O: FnMut(&GenerationRecord)>(mut self, mut observe: O) -> RunSummary {
        let mut max_onemax = self.state.x.ones();
        let outcome = loop {
            if self.state.x.zeros() == 0 {
                break Outcome::OptimumFound { t: self.state.t };
            }
            if self.state.t >= self.params.budget {
                break Outcome::BudgetExhausted;
            }
            let rec = self.step();
            max_onemax = max_onemax.max(rec.onemax_after);
            observe(&rec);
            if let Some(reason) = self.safety_violation(&rec) {
                break Outcome::SafetyTripped { t: self.state.t, reason };
            }
        };
        RunSummary {
            outcome,
            generations: self.state.t,
            evaluations: self.evaluations,
            final_onemax: self.state.x.ones(),
            max_onemax,
            final_lambda: self.state.lambda,
        }
    }
}

/// `F^{1/s}`, the failure multiplier.
pub fn growth_factor(update_strength: f64, s: f64) -> f64 {
    (update_strength.ln() / s).exp()
}

/// The (1:s+1) rule: shrink by `F` on success (never below 1), grow by `F^{1/s}` otherwise.
#[inline]
pub fn update_lambda(lambda: f64, success: bool, update_strength: f64, growth: f64) -> f64 {
    if success {
        (lambda / update_strength).max(1.0)
    } else {
        lambda * growth
    }
}

/// Runs Algorithm 1 to completion and keeps every generation record.
pub fn run(params: AlgParams, fitness: DynamicFitness) -> Result<RunTrace, EngineError> {
    let kind = fitness.kind();
    let ea = SaOneLambdaEa::new(params.clone(), fitness)?;
    let mut records = Vec::new();
    let summary = ea.run_observed(|r| records.push(*r));
    Ok(RunTrace {
        params,
        kind,
        records,
        summary,
    })
}
