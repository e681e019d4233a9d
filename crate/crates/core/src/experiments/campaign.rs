//! Many seeded runs per function kind, aggregated per OneMax level.
//!
//! Run `r` of every kind uses stream `r` of the master seed, so kinds see
//! common random numbers. HotTopic instances are drawn from stream
//! `r ^ 2^63`, which no run uses. Runs execute on a bounded rayon pool; the
//! per-level reduce walks runs in index order.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::engine::{Outcome, RunSummary, SaOneLambdaEa};
use crate::fitness::{DynamicFitness, FunctionKind};
use crate::format::sig9;
use crate::rng::{RngHandle, ALGORITHM};

use super::aggregate::{fmt_mean_std, KindAggregate, LevelTally, RunLevels, SeriesOptions};
use super::config::CampaignConfig;
use super::ExperimentError;

pub const TOOL_VERSION: &str = concat!("onelambda ", env!("CARGO_PKG_VERSION"));

const INSTANCE_STREAM_BIT: u64 = 1 << 63;

/// Results for one function kind.
#[derive(Debug, Clone)]
pub struct KindReport {
    pub kind: FunctionKind,
    /// Indexed by run.
    pub runs: Vec<RunSummary>,
    pub tally: LevelTally,
    pub aggregate: KindAggregate,
}

impl KindReport {
    pub fn found(&self) -> usize {
        self.runs.iter().filter(|r| r.outcome.found()).count()
    }

    pub fn fraction_found(&self) -> f64 {
        self.found() as f64 / self.runs.len() as f64
    }

    /// Median of the best OneMax value each run reached (upper median).
    pub fn median_max_onemax(&self) -> usize {
        let mut m: Vec<usize> = self.runs.iter().map(|r| r.max_onemax).collect();
        m.sort_unstable();
        m[m.len() / 2]
    }
}

#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub kinds: Vec<KindReport>,
}

impl CampaignReport {
    pub fn kind(&self, kind: FunctionKind) -> Option<&KindReport> {
        self.kinds.iter().find(|k| k.kind == kind)
    }
}

/// Fitness instance for run `run` of `kind`.
pub fn fitness_for(kind: FunctionKind, n: usize, master: u64, run: u64) -> DynamicFitness {
    DynamicFitness::new(kind, n, &mut RngHandle::new(master, run ^ INSTANCE_STREAM_BIT))
}

pub(crate) fn thread_pool(threads: usize) -> Result<rayon::ThreadPool, ExperimentError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ExperimentError::Runtime(format!("cannot start worker pool: {e}")))
}

/// Executes every run and aggregates. Writes nothing; see [`write_campaign`].
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport, ExperimentError> {
    cfg.validate()?;
    let pool = thread_pool(cfg.threads)?;
    let opts = SeriesOptions {
        window: cfg.window,
        count_window: cfg.count_window,
        normalize: cfg.normalize,
        order: cfg.order,
    };
    let mut kinds = Vec::with_capacity(cfg.kinds.len());
    for &kind in &cfg.kinds {
        let results: Vec<(RunSummary, RunLevels)> = pool.install(|| {
            (0..cfg.runs)
                .into_par_iter()
                .map(|r| {
                    let fitness = fitness_for(kind, cfg.n, cfg.seed, r);
                    let ea = SaOneLambdaEa::new(cfg.params_for(r), fitness).expect("validated");
                    let mut levels = RunLevels::new(cfg.n, kind);
                    let summary = ea.run_observed(|rec| levels.observe(rec));
                    (summary, levels)
                })
                .collect()
        });
        let mut tally = LevelTally::new(cfg.n);
        let mut runs = Vec::with_capacity(results.len());
        for (summary, levels) in results {
            debug_assert_eq!(levels.total_generations(), summary.generations);
            tally.add_run(&levels);
            runs.push(summary);
        }
        let aggregate = KindAggregate::build(kind, &tally, opts)?;
        kinds.push(KindReport {
            kind,
            runs,
            tally,
            aggregate,
        });
    }
    Ok(CampaignReport {
        config: cfg.clone(),
        kinds,
    })
}

pub const SUMMARY_CSV_HEADER: &str = "kind,runs,found,fraction_found,mean_generations,gen_std,mean_evaluations,eval_std,median_max_onemax";

pub const RUNS_CSV_HEADER: &str = "kind,run,outcome,t_found,generations,evaluations,final_onemax,max_onemax,final_lambda";

fn outcome_cells(o: &Outcome) -> (&'static str, String) {
    match o {
        Outcome::OptimumFound { t } => ("found", t.to_string()),
        Outcome::BudgetExhausted => ("budget", String::new()),
        Outcome::SafetyTripped { .. } => ("safety", String::new()),
    }
}

/// File name of the aggregate CSV for `kind`.
pub fn aggregate_file_name(kind: FunctionKind) -> String {
    format!("aggregate_{}.csv", kind.id())
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>, ExperimentError> {
    let path = dir.join(name);
    File::create(&path)
        .map(BufWriter::new)
        .map_err(|e| ExperimentError::Io(path.display().to_string(), e))
}

fn io_at(path: &Path) -> impl Fn(io::Error) -> ExperimentError + '_ {
    move |e| ExperimentError::Io(path.display().to_string(), e)
}

/// Writes one aggregate CSV per kind, `summary.csv` and `manifest.txt` into
/// `dir`; returns the paths written.
pub fn write_campaign(report: &CampaignReport, dir: &Path) -> Result<Vec<PathBuf>, ExperimentError> {
    fs::create_dir_all(dir).map_err(io_at(dir))?;
    let mut written = Vec::new();
    for k in &report.kinds {
        let name = aggregate_file_name(k.kind);
        let mut w = create(dir, &name)?;
        k.aggregate
            .write_csv(&mut w)
            .and_then(|_| w.flush())
            .map_err(io_at(&dir.join(&name)))?;
        written.push(dir.join(name));
    }

    let path = dir.join("summary.csv");
    let mut w = create(dir, "summary.csv")?;
    write_summary(report, &mut w).and_then(|_| w.flush()).map_err(io_at(&path))?;
    written.push(path);

    let path = dir.join("manifest.txt");
    let mut w = create(dir, "manifest.txt")?;
    write_manifest(report, &mut w).and_then(|_| w.flush()).map_err(io_at(&path))?;
    written.push(path);
    Ok(written)
}

pub fn write_summary<W: Write>(report: &CampaignReport, mut w: W) -> io::Result<()> {
    writeln!(w, "{SUMMARY_CSV_HEADER}")?;
    for k in &report.kinds {
        let gens: Vec<f64> = k.runs.iter().map(|r| r.generations as f64).collect();
        let evals: Vec<f64> = k.runs.iter().map(|r| r.evaluations as f64).collect();
        let (gm, gs) = fmt_mean_std(&gens);
        let (em, es) = fmt_mean_std(&evals);
        writeln!(
            w,
            "{},{},{},{},{gm},{gs},{em},{es},{}",
            k.kind,
            k.runs.len(),
            k.found(),
            sig9(k.fraction_found()),
            k.median_max_onemax()
        )?;
    }
    Ok(())
}

/// Config echo, hash, seed, tool version and every run's outcome.
pub fn write_manifest<W: Write>(report: &CampaignReport, mut w: W) -> io::Result<()> {
    let cfg = &report.config;
    writeln!(w, "tool={TOOL_VERSION}")?;
    writeln!(w, "rng={ALGORITHM}")?;
    writeln!(w, "config_sha256={}", cfg.hash())?;
    writeln!(w, "master_seed={}", cfg.seed)?;
    writeln!(w, "[config]")?;
    w.write_all(cfg.canonical().as_bytes())?;
    writeln!(w, "[runs]")?;
    writeln!(w, "{RUNS_CSV_HEADER}")?;
    for k in &report.kinds {
        for (i, r) in k.runs.iter().enumerate() {
            let (outcome, t) = outcome_cells(&r.outcome);
            writeln!(
                w,
                "{},{i},{outcome},{t},{},{},{},{},{}",
                k.kind,
                r.generations,
                r.evaluations,
                r.final_onemax,
                r.max_onemax,
                sig9(r.final_lambda)
            )?;
        }
    }
    Ok(())
}
