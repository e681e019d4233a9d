//! Per-OneMax-level statistics.
//!
//! A generation belongs to the level of its parent, `v = n - Z^t`. Every
//! visit counts once, so a run that falls back and revisits a level
//! contributes each visit. All sums are integers (λ is accumulated in fixed
//! point, exactly), which makes the result independent of the order in which
//! runs are merged.

use std::io::{self, Write};

use crate::engine::GenerationRecord;
use crate::fitness::FunctionKind;
use crate::format::{opt_sig9, sig9};

use super::config::NormOrder;
use super::series::{normalize, smooth, smooth_present};

/// `λ · 2^52` is an integer for every `λ >= 1`.
const LAMBDA_SCALE: f64 = (1u64 << 52) as f64;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Cell {
    visits: u64,
    lambda_fx: u128,
    drift: i64,
    evaluations: u64,
}

/// One run's per-level tallies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLevels {
    n: usize,
    dynamic: bool,
    cells: Vec<Cell>,
}

impl RunLevels {
    pub fn new(n: usize, kind: FunctionKind) -> Self {
        Self {
            n,
            dynamic: kind.is_dynamic(),
            cells: vec![Cell::default(); n + 1],
        }
    }

    pub fn observe(&mut self, rec: &GenerationRecord) {
        let cell = &mut self.cells[self.n - rec.z_before];
        cell.visits += 1;
        debug_assert!(rec.lambda_before >= 1.0 && rec.lambda_before < 2f64.powi(60));
        cell.lambda_fx += (rec.lambda_before * LAMBDA_SCALE) as u128;
        cell.drift += rec.z_decrease();
        cell.evaluations += rec.offspring + self.dynamic as u64;
    }

    pub fn total_generations(&self) -> u64 {
        self.cells.iter().map(|c| c.visits).sum()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Pooled {
    cell: Cell,
    gen_sq: u128,
    eval_sq: u128,
}

/// Pooled tallies over many runs of one kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTally {
    n: usize,
    runs: u64,
    pooled: Vec<Pooled>,
}

impl LevelTally {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            runs: 0,
            pooled: vec![Pooled::default(); n + 1],
        }
    }

    pub fn add_run(&mut self, run: &RunLevels) {
        assert_eq!(run.n, self.n);
        self.runs += 1;
        for (p, c) in self.pooled.iter_mut().zip(&run.cells) {
            p.cell.visits += c.visits;
            p.cell.lambda_fx += c.lambda_fx;
            p.cell.drift += c.drift;
            p.cell.evaluations += c.evaluations;
            p.gen_sq += c.visits as u128 * c.visits as u128;
            p.eval_sq += c.evaluations as u128 * c.evaluations as u128;
        }
    }

    pub fn runs(&self) -> u64 {
        self.runs
    }

    pub fn total_generations(&self) -> u64 {
        self.pooled.iter().map(|p| p.cell.visits).sum()
    }

    /// Per-level statistics, one entry per level `0..=n`.
    pub fn levels(&self) -> Vec<LevelAggregate> {
        let runs = self.runs as f64;
        self.pooled
            .iter()
            .enumerate()
            .map(|(level, p)| {
                let c = p.cell;
                if c.visits == 0 {
                    return LevelAggregate::absent(level);
                }
                let v = c.visits as f64;
                let mean_g = v / runs;
                let mean_e = c.evaluations as f64 / runs;
                LevelAggregate {
                    level,
                    visits: c.visits,
                    mean_lambda: Some(c.lambda_fx as f64 / LAMBDA_SCALE / v),
                    mean_drift: Some(c.drift as f64 / v),
                    generations: Some(mean_g),
                    evaluations: Some(mean_e),
                    gen_std: Some(sample_std(p.gen_sq as f64, mean_g, runs)),
                    eval_std: Some(sample_std(p.eval_sq as f64, mean_e, runs)),
                }
            })
            .collect()
    }
}

fn sample_std(sum_sq: f64, mean: f64, k: f64) -> f64 {
    if k < 2.0 {
        return 0.0;
    }
    ((sum_sq - k * mean * mean).max(0.0) / (k - 1.0)).sqrt()
}

/// Statistics at one OneMax level, absent (`None`) when no run visited it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelAggregate {
    pub level: usize,
    /// Generations departing this level, summed over runs.
    pub visits: u64,
    pub mean_lambda: Option<f64>,
    /// Mean of `Z^t - Z^{t+1}` over generations departing this level.
    pub mean_drift: Option<f64>,
    /// Generations spent at this level, averaged over runs.
    pub generations: Option<f64>,
    /// Evaluations spent at this level, averaged over runs. Dynamic kinds
    /// include one parent re-evaluation per generation.
    pub evaluations: Option<f64>,
    /// Sample standard deviation across runs of the per-run generation count.
    pub gen_std: Option<f64>,
    pub eval_std: Option<f64>,
}

impl LevelAggregate {
    fn absent(level: usize) -> Self {
        Self {
            level,
            visits: 0,
            mean_lambda: None,
            mean_drift: None,
            generations: None,
            evaluations: None,
            gen_std: None,
            eval_std: None,
        }
    }
}

pub const AGGREGATE_CSV_HEADER: &str = "kind,level,mean_lambda,mean_lambda_smoothed,mean_drift,mean_drift_smoothed,generations,generations_norm,evaluations,evaluations_norm,gen_std,eval_std,visits";

/// Per-level table of one kind with its smoothed and normalized columns.
#[derive(Debug, Clone, PartialEq)]
pub struct KindAggregate {
    pub kind: FunctionKind,
    pub levels: Vec<LevelAggregate>,
    pub mean_lambda_smoothed: Vec<Option<f64>>,
    pub mean_drift_smoothed: Vec<Option<f64>>,
    /// `None` everywhere when normalization is off or nothing was counted.
    pub generations_norm: Vec<Option<f64>>,
    pub evaluations_norm: Vec<Option<f64>>,
}

/// Options for the derived columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub window: usize,
    pub count_window: usize,
    pub normalize: bool,
    pub order: NormOrder,
}

impl KindAggregate {
    pub fn build(kind: FunctionKind, tally: &LevelTally, opts: SeriesOptions) -> Result<Self, super::ExperimentError> {
        let levels = tally.levels();
        let lambda: Vec<_> = levels.iter().map(|l| l.mean_lambda).collect();
        let drift: Vec<_> = levels.iter().map(|l| l.mean_drift).collect();
        let counts = |f: fn(&LevelAggregate) -> Option<f64>| -> Result<Vec<Option<f64>>, super::ExperimentError> {
            let present: Vec<bool> = levels.iter().map(|l| l.visits > 0).collect();
            if !opts.normalize || !present.iter().any(|&p| p) {
                return Ok(vec![None; levels.len()]);
            }
            let raw: Vec<f64> = levels.iter().map(|l| f(l).unwrap_or(0.0)).collect();
            let out = match opts.order {
                NormOrder::SmoothFirst => normalize(&smooth(&raw, opts.count_window)?)?,
                NormOrder::NormalizeFirst => smooth(&normalize(&raw)?, opts.count_window)?,
            };
            Ok(out.into_iter().zip(present).map(|(v, p)| p.then_some(v)).collect())
        };
        Ok(Self {
            kind,
            mean_lambda_smoothed: smooth_present(&lambda, opts.window)?,
            mean_drift_smoothed: smooth_present(&drift, opts.window)?,
            generations_norm: counts(|l| l.generations)?,
            evaluations_norm: counts(|l| l.evaluations)?,
            levels,
        })
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{AGGREGATE_CSV_HEADER}")?;
        for (i, l) in self.levels.iter().enumerate() {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                self.kind,
                l.level,
                opt_sig9(l.mean_lambda),
                opt_sig9(self.mean_lambda_smoothed[i]),
                opt_sig9(l.mean_drift),
                opt_sig9(self.mean_drift_smoothed[i]),
                opt_sig9(l.generations),
                opt_sig9(self.generations_norm[i]),
                opt_sig9(l.evaluations),
                opt_sig9(self.evaluations_norm[i]),
                opt_sig9(l.gen_std),
                opt_sig9(l.eval_std),
                l.visits
            )?;
        }
        Ok(())
    }
}

/// Mean and sample standard deviation of `xs` (0 for fewer than two values).
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    (mean, var.sqrt())
}

pub(crate) fn fmt_mean_std(xs: &[f64]) -> (String, String) {
    if xs.is_empty() {
        return (String::new(), String::new());
    }
    let (m, s) = mean_std(xs);
    (sig9(m), sig9(s))
}
