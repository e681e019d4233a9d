//! Command-line front end.
//!
//! Every subcommand writes CSV. With `--out-dir` the CSV goes to a named file
//! in that directory (created if needed); otherwise to stdout. Exit status is
//! 0 on success, 1 for usage or configuration errors, 2 for runtime failures.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analytics::{solve_triple, DriftTable, ImprovementStats, Triple};
use crate::engine::{self, AlgParams, StartSpec};
use crate::experiments::{
    drift_sweep, fitness_for, parse_budget, pimp_sweep, run_campaign, theorem_dichotomy, write_campaign, CampaignConfig, DichotomyConfig,
    DriftMethod, ExperimentError, PimpMethod,
};
use crate::fitness::FunctionKind;

#[derive(Debug, Parser)]
#[command(name = "onelambda", version, about = "Self-adjusting (1,λ)-EA simulations and analytics")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Master seed (overrides a campaign file's `seed`).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for output files; stdout when absent.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Worker threads, 0 = all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One run; writes the per-generation trace.
    Run(RunArgs),
    /// Campaign from a config file; writes per-kind aggregates, summary and manifest.
    Campaign {
        #[arg(long)]
        config: PathBuf,
    },
    /// Improvement-probability sweep over OneMax values.
    Pimp(PimpArgs),
    /// Drift tables over Z and λ.
    Drift(DriftArgs),
    /// Solve for (λ, ε, s) with mildly positive OneMax drift.
    Triple {
        #[arg(long)]
        lambda: u64,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Accepted residual relative to |Δ_{<=-1}|.
        #[arg(long, default_value_t = 0.25)]
        tolerance: f64,
    },
    /// OneMax vs Dynamic BinVal from a constructed triple.
    Dichotomy(DichotomyArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long = "fn", default_value = "onemax")]
    kind: FunctionKind,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 3.0)]
    s: f64,
    /// Update strength.
    #[arg(long = "F", default_value_t = 1.5)]
    update_strength: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda_init: f64,
    /// Generations, `N` or `Kn`.
    #[arg(long, default_value = "500n")]
    budget: String,
    /// `zeros`, `bits:<01..>` or `random-zeros:<Z>`.
    #[arg(long, default_value = "zeros")]
    start: StartSpec,
    /// Stream index under the master seed.
    #[arg(long, default_value_t = 0)]
    stream: u64,
    #[arg(long)]
    safety: bool,
}

#[derive(Debug, Args)]
struct PimpArgs {
    /// Function kinds (repeatable); defaults to onemax, binval, binary, dynbinval.
    #[arg(long = "fn")]
    kinds: Vec<FunctionKind>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// OneMax values: comma-separated numbers or `from:to:step` ranges.
    #[arg(long, default_value = "500:950:50,990")]
    om: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Mc)]
    method: MethodArg,
    #[arg(long, default_value_t = 1000)]
    points: u64,
    #[arg(long, default_value_t = 100)]
    offspring: u64,
}

#[derive(Debug, Args)]
struct DriftArgs {
    #[arg(long = "fn")]
    kinds: Vec<FunctionKind>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Distances to the optimum: numbers or `from:to:step` ranges.
    #[arg(long)]
    z: String,
    /// Offspring counts: numbers or ranges.
    #[arg(long)]
    lambda: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Mc)]
    method: MethodArg,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Also write the long-format step histogram.
    #[arg(long)]
    histogram: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Mc,
}

#[derive(Debug, Args)]
struct DichotomyArgs {
    #[arg(long, default_value_t = 8)]
    lambda: u64,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0.03)]
    eta: f64,
    #[arg(long, default_value_t = 20)]
    runs: u64,
    #[arg(long, default_value = "500n")]
    budget: String,
    /// Override the solved success ratio.
    #[arg(long)]
    s: Option<f64>,
    /// Initial λ; defaults to the triple's λ.
    #[arg(long)]
    lambda_init: Option<f64>,
    #[arg(long, default_value_t = 0.25)]
    tolerance: f64,
}

/// Parses `"1,5,10:30:10"` into `[1, 5, 10, 20, 30]`.
pub fn parse_grid(text: &str) -> Result<Vec<u64>, ExperimentError> {
    let bad = || ExperimentError::Config(format!("bad grid {text:?} (numbers or from:to:step, comma-separated)"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let nums: Vec<u64> = part
            .split(':')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match nums[..] {
            [v] => out.push(v),
            [from, to, step] if step > 0 && from <= to => out.extend((from..=to).step_by(step as usize)),
            _ => return Err(bad()),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn kinds_or_default(kinds: Vec<FunctionKind>) -> Vec<FunctionKind> {
    if kinds.is_empty() {
        FunctionKind::standard_set().to_vec()
    } else {
        kinds
    }
}

/// Writes to `dir/name`, or stdout when `dir` is `None`.
fn emit(dir: Option<&Path>, name: &str, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), ExperimentError> {
    match dir {
        Some(dir) => {
            let path = dir.join(name);
            let io_err = |e| ExperimentError::Io(path.display().to_string(), e);
            fs::create_dir_all(dir).map_err(|e| ExperimentError::Io(dir.display().to_string(), e))?;
            let mut w = BufWriter::new(File::create(&path).map_err(io_err)?);
            body(&mut w).and_then(|_| w.flush()).map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| ExperimentError::Io("stdout".into(), e))
        }
    }
}

fn run_command(cli: Cli) -> Result<(), ExperimentError> {
    let Global {
        seed, out_dir, threads, ..
    } = cli.global;
    let out = out_dir.as_deref();
    let seed_or_zero = seed.unwrap_or(0);
    let threads_override = threads;
    let threads = threads.unwrap_or(0);
    match cli.command {
        Command::Run(a) => {
            let mut p = AlgParams::new(a.n, a.s, a.update_strength)
                .with_seed(seed_or_zero, a.stream)
                .with_budget(parse_budget(&a.budget, a.n)?)
                .with_start(a.start);
            p.c = a.c;
            p.lambda_init = a.lambda_init;
            p.safety = a.safety;
            p.validate()?;
            let trace = engine::run(p, fitness_for(a.kind, a.n, seed_or_zero, a.stream))?;
            emit(out, "trace.csv", |w| trace.write_csv(w))?;
            eprintln!("{}: {} after {} generations", a.kind, trace.outcome(), trace.summary.generations);
        }
        Command::Campaign { config } => {
            let mut cfg = CampaignConfig::from_file(&config)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(t) = threads_override {
                cfg.threads = t;
            }
            let dir = out_dir
                .or_else(|| cfg.out_dir.clone())
                .ok_or_else(|| ExperimentError::Config("campaign needs --out-dir or out_dir in the config".into()))?;
            let report = run_campaign(&cfg)?;
            for path in write_campaign(&report, &dir)? {
                eprintln!("wrote {}", path.display());
            }
            for k in &report.kinds {
                eprintln!("{}: {}/{} found", k.kind, k.found(), k.runs.len());
            }
        }
        Command::Pimp(a) => {
            let kinds = kinds_or_default(a.kinds);
            let oms: Vec<usize> = parse_grid(&a.om)?.into_iter().map(|v| v as usize).collect();
            let method = match a.method {
                MethodArg::Exact => PimpMethod::Exact,
                MethodArg::Mc => PimpMethod::MonteCarlo {
                    points: a.points,
                    offspring_per_point: a.offspring,
                },
            };
            let stats = pimp_sweep(&kinds, a.n, &oms, method, seed_or_zero, threads)?;
            emit(out, "pimp.csv", |w| {
                writeln!(w, "{}", ImprovementStats::csv_header())?;
                stats.iter().try_for_each(|s| writeln!(w, "{}", s.csv_row()))
            })?;
        }
        Command::Drift(a) => {
            let kinds = if a.kinds.is_empty() { vec![FunctionKind::OneMax] } else { a.kinds };
            let zs: Vec<usize> = parse_grid(&a.z)?.into_iter().map(|v| v as usize).collect();
            let lambdas = parse_grid(&a.lambda)?;
            let method = match a.method {
                MethodArg::Exact => DriftMethod::Exact,
                MethodArg::Mc => DriftMethod::MonteCarlo { trials: a.trials },
            };
            let tables = drift_sweep(&kinds, a.n, &zs, &lambdas, method, seed_or_zero, threads)?;
            emit(out, "drift.csv", |w| {
                writeln!(w, "{}", DriftTable::csv_header())?;
                tables.iter().try_for_each(|t| writeln!(w, "{}", t.csv_row()))
            })?;
            if a.histogram {
                emit(out, "drift_hist.csv", |w| {
                    tables.iter().enumerate().try_for_each(|(i, t)| t.write_histogram(&mut *w, i == 0))
                })?;
            }
        }
        Command::Triple { lambda, n, tolerance } => {
            let t = solve_triple(lambda, n, tolerance)?;
            emit(out, "triple.csv", |w| writeln!(w, "{}\n{}", Triple::CSV_HEADER, t.csv_row()))?;
            if !t.converged {
                eprintln!("warning: residual {} exceeds tolerance {tolerance} x |delta_le_m1|", t.residual);
            }
        }
        Command::Dichotomy(a) => {
            let mut cfg = DichotomyConfig::new(a.lambda, a.n, a.eta, a.runs);
            cfg.budget = parse_budget(&a.budget, a.n)?;
            cfg.seed = seed_or_zero;
            cfg.s_override = a.s;
            cfg.lambda_init = a.lambda_init;
            cfg.tolerance = a.tolerance;
            cfg.threads = threads;
            let report = theorem_dichotomy(&cfg)?;
            emit(out, "dichotomy.csv", |w| report.write_csv(w))?;
            if out.is_some() {
                emit(out, "dichotomy_runs.csv", |w| report.write_runs_csv(w))?;
            }
            for arm in &report.arms {
                eprintln!("{}: {}/{} found", arm.kind, arm.found(), arm.runs.len());
            }
        }
    }
    Ok(())
}

/// Entry point shared by the binary and tests; returns the exit status.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
