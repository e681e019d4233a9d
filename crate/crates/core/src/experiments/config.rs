//! Campaign configuration files.
//!
//! Grammar, one setting per line:
//!
//! ```text
//! # comment (also allowed after a value)
//! key = value
//! ```
//!
//! `fn` may repeat, once per function kind; every other key may appear at
//! most once. Keys and defaults:
//!
//! | key           | meaning                                   | default |
//! |---------------|-------------------------------------------|---------|
//! | `fn`          | function kind id (`onemax`, `binval`, `binary`, `dynbinval`, `adv-dynbinval`, `hottopic[:L/a/b/e]`) | required |
//! | `n`           | dimension                                 | 1000    |
//! | `s`           | success ratio                             | 3       |
//! | `F`           | update strength                           | 1.5     |
//! | `c`           | mutation numerator (rate `c/n`)           | 1       |
//! | `lambda_init` | initial λ                                 | 1       |
//! | `runs`        | runs per kind                             | 100     |
//! | `budget`      | generations, either `N` or `Kn` (K·n)     | `500n`  |
//! | `start`       | `zeros`, `bits:<01..>`, `random-zeros:<Z>`| `zeros` |
//! | `seed`        | master seed                               | 0       |
//! | `window`      | odd smoothing window for λ and drift      | 15      |
//! | `count_window`| odd smoothing window for generation/evaluation counts | 1 |
//! | `normalize`   | emit normalized count columns             | `true`  |
//! | `order`       | `smooth-first` or `normalize-first`       | `smooth-first` |
//! | `safety`      | runtime safety assertions                 | `false` |
//! | `threads`     | worker threads, 0 = all cores             | 0       |
//! | `out_dir`     | output directory                          | none    |

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::engine::{AlgParams, StartSpec};
use crate::fitness::FunctionKind;
use crate::format::sig9;

use super::ExperimentError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormOrder {
    SmoothFirst,
    NormalizeFirst,
}

impl NormOrder {
    fn id(self) -> &'static str {
        match self {
            Self::SmoothFirst => "smooth-first",
            Self::NormalizeFirst => "normalize-first",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub kinds: Vec<FunctionKind>,
    pub n: usize,
    pub s: f64,
    pub update_strength: f64,
    pub c: f64,
    pub lambda_init: f64,
    pub runs: u64,
    pub budget: u64,
    pub start: StartSpec,
    pub seed: u64,
    pub window: usize,
    pub count_window: usize,
    pub normalize: bool,
    pub order: NormOrder,
    pub safety: bool,
    pub threads: usize,
    pub out_dir: Option<PathBuf>,
}

impl CampaignConfig {
    /// The paper's simulation setting for the given kinds.
    pub fn new(kinds: Vec<FunctionKind>) -> Self {
        Self {
            kinds,
            n: 1000,
            s: 3.0,
            update_strength: 1.5,
            c: 1.0,
            lambda_init: 1.0,
            runs: 100,
            budget: 500 * 1000,
            start: StartSpec::AllZeros,
            seed: 0,
            window: 15,
            count_window: 1,
            normalize: true,
            order: NormOrder::SmoothFirst,
            safety: false,
            threads: 0,
            out_dir: None,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, ExperimentError> {
        let text = std::fs::read_to_string(path).map_err(|e| ExperimentError::Config(format!("cannot read {}: {e}", path.display())))?;
        text.parse()
    }

    /// Parameters of run `run` on `kind`: stream index = run index.
    pub fn params_for(&self, run: u64) -> AlgParams {
        let mut p = AlgParams::new(self.n, self.s, self.update_strength)
            .with_seed(self.seed, run)
            .with_budget(self.budget)
            .with_start(self.start.clone());
        p.c = self.c;
        p.lambda_init = self.lambda_init;
        p.safety = self.safety;
        p
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::Config(m));
        if self.kinds.is_empty() {
            return bad("at least one `fn` is required".into());
        }
        let mut seen = HashSet::new();
        for k in &self.kinds {
            if !seen.insert(k.id()) {
                return bad(format!("function kind {} listed twice", k.id()));
            }
        }
        if self.runs == 0 {
            return bad("runs must be at least 1".into());
        }
        for (name, w) in [("window", self.window), ("count_window", self.count_window)] {
            if w == 0 || w % 2 == 0 {
                return bad(format!("{name} must be odd and at least 1, got {w}"));
            }
        }
        self.params_for(0).validate()?;
        Ok(())
    }

    /// Every setting that influences results, in a fixed order. Output
    /// location and thread count are excluded.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        for k in &self.kinds {
            writeln!(s, "fn={k}").unwrap();
        }
        writeln!(s, "n={}", self.n).unwrap();
        writeln!(s, "s={}", sig9(self.s)).unwrap();
        writeln!(s, "F={}", sig9(self.update_strength)).unwrap();
        writeln!(s, "c={}", sig9(self.c)).unwrap();
        writeln!(s, "lambda_init={}", sig9(self.lambda_init)).unwrap();
        writeln!(s, "runs={}", self.runs).unwrap();
        writeln!(s, "budget={}", self.budget).unwrap();
        writeln!(s, "start={}", self.start).unwrap();
        writeln!(s, "seed={}", self.seed).unwrap();
        writeln!(s, "window={}", self.window).unwrap();
        writeln!(s, "count_window={}", self.count_window).unwrap();
        writeln!(s, "normalize={}", self.normalize).unwrap();
        writeln!(s, "order={}", self.order.id()).unwrap();
        writeln!(s, "safety={}", self.safety).unwrap();
        s
    }

    /// SHA-256 of [`Self::canonical`], lowercase hex.
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes())
            .iter()
            .fold(String::new(), |mut acc, b| {
                write!(acc, "{b:02x}").unwrap();
                acc
            })
    }
}

fn parse_bool(v: &str) -> Option<bool> {
    match v {
        "true" | "yes" | "on" | "1" => Some(true),
        "false" | "no" | "off" | "0" => Some(false),
        _ => None,
    }
}

fn num<T: FromStr>(key: &str, v: &str) -> Result<T, ExperimentError> {
    v.parse()
        .map_err(|_| ExperimentError::Config(format!("bad value for {key}: {v:?}")))
}

impl FromStr for CampaignConfig {
    type Err = ExperimentError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut cfg = Self::new(Vec::new());
        let mut seen = HashSet::new();
        let mut budget: Option<String> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| ExperimentError::Config(format!("line {}: {m}", lineno + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if key != "fn" && !seen.insert(key.to_string()) {
                return Err(err(format!("duplicate key {key}")));
            }
            let with_line = |e: ExperimentError| err(e.to_string());
            match key {
                "fn" => cfg
                    .kinds
                    .push(value.parse().map_err(|e: crate::fitness::FitnessError| err(e.to_string()))?),
                "n" => cfg.n = num(key, value).map_err(with_line)?,
                "s" => cfg.s = num(key, value).map_err(with_line)?,
                "F" => cfg.update_strength = num(key, value).map_err(with_line)?,
                "c" => cfg.c = num(key, value).map_err(with_line)?,
                "lambda_init" => cfg.lambda_init = num(key, value).map_err(with_line)?,
                "runs" => cfg.runs = num(key, value).map_err(with_line)?,
                "budget" => budget = Some(value.to_string()),
                "start" => cfg.start = value.parse().map_err(err)?,
                "seed" => cfg.seed = num(key, value).map_err(with_line)?,
                "window" => cfg.window = num(key, value).map_err(with_line)?,
                "count_window" => cfg.count_window = num(key, value).map_err(with_line)?,
                "normalize" => cfg.normalize = parse_bool(value).ok_or_else(|| err(format!("bad boolean {value:?}")))?,
                "order" => {
                    cfg.order = match value {
                        "smooth-first" => NormOrder::SmoothFirst,
                        "normalize-first" => NormOrder::NormalizeFirst,
                        _ => return Err(err(format!("order must be smooth-first or normalize-first, got {value:?}"))),
                    }
                }
                "safety" => cfg.safety = parse_bool(value).ok_or_else(|| err(format!("bad boolean {value:?}")))?,
                "threads" => cfg.threads = num(key, value).map_err(with_line)?,
                "out_dir" => cfg.out_dir = Some(PathBuf::from(value)),
                _ => return Err(err(format!("unknown key {key:?}"))),
            }
        }
        cfg.budget = match budget {
            None => 500 * cfg.n as u64,
            Some(b) => parse_budget(&b, cfg.n)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// `"250000"` or `"500n"`.
pub fn parse_budget(text: &str, n: usize) -> Result<u64, ExperimentError> {
    let bad = || ExperimentError::Config(format!("bad budget {text:?} (use N or Kn)"));
    match text.strip_suffix('n') {
        Some(k) => k.trim().parse::<u64>().map_err(|_| bad())?.checked_mul(n as u64).ok_or_else(bad),
        None => text.parse().map_err(|_| bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_defaults() {
        let cfg: CampaignConfig = "# figure\nfn = onemax\nfn=dbv  # dynamic\nn=50\nbudget=10n\nwindow=3\n"
            .parse()
            .unwrap();
        assert_eq!(cfg.kinds, vec![FunctionKind::OneMax, FunctionKind::DynamicBinVal]);
        assert_eq!(cfg.budget, 500);
        assert_eq!(cfg.runs, 100);
        assert_eq!(cfg.window, 3);
    }

    #[test]
    fn rejects() {
        for bad in [
            "n=5",
            "fn=onemax\nn=5\nn=6",
            "fn=onemax\nwindow=4",
            "fn=onemax\nruns=0",
            "fn=onemax\nbudget=0",
            "fn=onemax\ncolour=red",
            "fn=onemax\nfn=om",
            "fn=nosuch",
            "fn=onemax\nF=1",
        ] {
            assert!(bad.parse::<CampaignConfig>().is_err(), "{bad}");
        }
    }

    #[test]
    fn hash_ignores_output_location() {
        let a: CampaignConfig = "fn=onemax\nout_dir=a\nthreads=2".parse().unwrap();
        let b: CampaignConfig = "fn=onemax\nout_dir=b".parse().unwrap();
        let c: CampaignConfig = "fn=onemax\nseed=1".parse().unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_ne!(a.hash(), c.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
