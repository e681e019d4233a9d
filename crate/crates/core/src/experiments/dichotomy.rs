//! Desk-scale OneMax vs Dynamic BinVal separation at a constructed triple.
//!
//! `solve_triple(λ, n)` fixes the start distance `Z0 = ε̃n` and the success
//! ratio `s̃`; both functions then run from a random point with exactly `Z0`
//! zero-bits with `F = 1 + η`.
//!
//! By default λ starts at the triple's λ rather than 1. The asymptotic
//! argument has λ reach its equilibrium in `o(n)` generations, but at
//! `n = 1000` and `F = 1.03` that warm-up takes about `s̃ log_F λ` ≈ 800
//! generations of λ ≈ 1, during which comma selection walks the search point
//! back to `Z ≈ n/2` on both functions.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::analytics::{solve_triple, Triple};
use crate::engine::{AlgParams, Outcome, RunSummary, SaOneLambdaEa, StartSpec};
use crate::fitness::{DynamicFitness, FunctionKind};
use crate::format::sig9;

use super::campaign::thread_pool;
use super::ExperimentError;

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyConfig {
    pub lambda: u64,
    pub n: usize,
    /// `F = 1 + η`.
    pub eta: f64,
    pub runs: u64,
    pub budget: u64,
    pub seed: u64,
    /// Replaces `s̃` (e.g. `0.5` for the efficient-regime control).
    pub s_override: Option<f64>,
    /// Initial λ; `None` starts at the triple's λ.
    pub lambda_init: Option<f64>,
    /// Relative residual accepted by the triple solver.
    pub tolerance: f64,
    pub threads: usize,
}

impl DichotomyConfig {
    pub fn new(lambda: u64, n: usize, eta: f64, runs: u64) -> Self {
        Self {
            lambda,
            n,
            eta,
            runs,
            budget: 500 * n as u64,
            seed: 0,
            s_override: None,
            lambda_init: None,
            tolerance: 0.25,
            threads: 0,
        }
    }

    /// `(ln n / n, 1 / ln n)`, the open interval `η` must lie in.
    pub fn eta_band(n: usize) -> (f64, f64) {
        let ln = (n as f64).ln();
        (ln / n as f64, 1.0 / ln)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::Config(m));
        if self.lambda < 2 {
            return bad(format!("lambda = {} must be at least 2", self.lambda));
        }
        if self.n < 3 {
            return bad(format!("n = {} is too small", self.n));
        }
        let (lo, hi) = Self::eta_band(self.n);
        if !(self.eta > lo && self.eta < hi) {
            return bad(format!(
                "eta = {} outside the admissible band ({}, {}) for n = {}",
                self.eta,
                sig9(lo),
                sig9(hi),
                self.n
            ));
        }
        if self.runs == 0 {
            return bad("runs must be at least 1".into());
        }
        if self.budget == 0 {
            return bad("budget must be at least 1 generation".into());
        }
        if let Some(s) = self.s_override {
            if s.is_nan() || s <= 0.0 {
                return bad(format!("s = {s} must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct DichotomyArm {
    pub kind: FunctionKind,
    pub runs: Vec<RunSummary>,
}

impl DichotomyArm {
    pub fn found(&self) -> usize {
        self.runs.iter().filter(|r| r.outcome.found()).count()
    }

    pub fn fraction_found(&self) -> f64 {
        self.found() as f64 / self.runs.len() as f64
    }

    /// Mean generations of the successful runs, `None` if there were none.
    pub fn mean_generations_found(&self) -> Option<f64> {
        let g: Vec<f64> = self
            .runs
            .iter()
            .filter_map(|r| match r.outcome {
                Outcome::OptimumFound { t } => Some(t as f64),
                _ => None,
            })
            .collect();
        (!g.is_empty()).then(|| g.iter().sum::<f64>() / g.len() as f64)
    }

    /// Sorted terminal distances to the optimum.
    pub fn terminal_z(&self, n: usize) -> Vec<usize> {
        let mut z: Vec<usize> = self.runs.iter().map(|r| n - r.final_onemax).collect();
        z.sort_unstable();
        z
    }
}

#[derive(Debug, Clone)]
pub struct DichotomyReport {
    pub config: DichotomyConfig,
    pub triple: Triple,
    pub s: f64,
    pub lambda_init: f64,
    pub arms: Vec<DichotomyArm>,
}

impl DichotomyReport {
    pub fn arm(&self, kind: FunctionKind) -> &DichotomyArm {
        self.arms.iter().find(|a| a.kind == kind).expect("both arms are always run")
    }

    /// OneMax fraction found minus Dynamic BinVal fraction found.
    pub fn separation(&self) -> f64 {
        self.arm(FunctionKind::OneMax).fraction_found() - self.arm(FunctionKind::DynamicBinVal).fraction_found()
    }

    pub const CSV_HEADER: &'static str = "lambda,n,eta,F,Z0,eps,s,lambda_init,kind,runs,found,fraction_found,mean_generations_found,terminal_z_min,terminal_z_median,terminal_z_max";

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", Self::CSV_HEADER)?;
        let c = &self.config;
        for arm in &self.arms {
            let z = arm.terminal_z(c.n);
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                c.lambda,
                c.n,
                sig9(c.eta),
                sig9(1.0 + c.eta),
                self.triple.z,
                sig9(self.triple.eps),
                sig9(self.s),
                sig9(self.lambda_init),
                arm.kind,
                arm.runs.len(),
                arm.found(),
                sig9(arm.fraction_found()),
                arm.mean_generations_found().map(sig9).unwrap_or_default(),
                z[0],
                z[z.len() / 2],
                z[z.len() - 1]
            )?;
        }
        Ok(())
    }

    pub const RUNS_CSV_HEADER: &'static str = "kind,run,outcome,generations,terminal_z,max_onemax";

    pub fn write_runs_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", Self::RUNS_CSV_HEADER)?;
        for arm in &self.arms {
            for (i, r) in arm.runs.iter().enumerate() {
                let outcome = if r.outcome.found() { "found" } else { "budget" };
                writeln!(
                    w,
                    "{},{i},{outcome},{},{},{}",
                    arm.kind,
                    r.generations,
                    self.config.n - r.final_onemax,
                    r.max_onemax
                )?;
            }
        }
        Ok(())
    }
}

/// Solves the triple, then runs OneMax and Dynamic BinVal from `ε̃n` zero-bits.
pub fn theorem_dichotomy(cfg: &DichotomyConfig) -> Result<DichotomyReport, ExperimentError> {
    cfg.validate()?;
    let triple = solve_triple(cfg.lambda, cfg.n, cfg.tolerance)?;
    let s = cfg.s_override.unwrap_or(triple.s);
    let lambda_init = cfg.lambda_init.unwrap_or(cfg.lambda as f64);
    let params = |r: u64| {
        let mut p = AlgParams::new(cfg.n, s, 1.0 + cfg.eta)
            .with_seed(cfg.seed, r)
            .with_budget(cfg.budget)
            .with_start(StartSpec::RandomZeros(triple.z));
        p.lambda_init = lambda_init;
        p
    };
    params(0).validate()?;
    let pool = thread_pool(cfg.threads)?;
    let arms = [FunctionKind::OneMax, FunctionKind::DynamicBinVal]
        .into_iter()
        .map(|kind| {
            let runs = pool.install(|| {
                (0..cfg.runs)
                    .into_par_iter()
                    .map(|r| {
                        let ea = SaOneLambdaEa::new(params(r), DynamicFitness::deterministic(kind, cfg.n)).expect("validated");
                        ea.run_observed(|_| {})
                    })
                    .collect()
            });
            DichotomyArm { kind, runs }
        })
        .collect();
    Ok(DichotomyReport {
        config: cfg.clone(),
        triple,
        s,
        lambda_init,
        arms,
    })
}
