//! Improvement probabilities, equilibrium population sizes, drift tables,
//! the `h`/`G` potential and the `(λ, ε, s)` triple solver.
//!
//! Exact quantities are computed in `f64` from binomial tables truncated at
//! [`I_MAX`]; the truncated mass is reported alongside, never assumed away.
//! Monte Carlo estimates carry their sample count and standard error.

mod binomial;
mod exact;
mod montecarlo;
mod potential;
mod triple;

use std::fmt;
use std::io::{self, Write};

use thiserror::Error;

use crate::fitness::FunctionKind;
use crate::format::sig9;

pub use binomial::{flip_count_distribution, flip_tail_mass, I_MAX};
pub use exact::{
    lambda_star, onemax_step_distribution_exact, onemax_step_distribution_with_rate, pimp_exact_dbv, pimp_exact_dbv_with_rate,
    pimp_exact_onemax, pimp_exact_onemax_with_rate, qimp, single_offspring_delta, StepDistribution,
};
pub use montecarlo::{drift_mc, h_drift_mc, mc_improvement_probability, Estimate};
pub use potential::{drift_h_formula, potential_g, potential_h, PotentialParams};
pub use triple::{solve_triple, warm_start_eps, Triple};

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticsError {
    #[error("domain error: {0}")]
    Domain(String),
}

/// How a number was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Exact,
    MonteCarlo { samples: u64, std_err: f64 },
}

/// Two-sided 95% normal quantile used for reported CI half-widths.
pub const Z95: f64 = 1.959_963_984_540_054;

impl Method {
    pub fn samples(&self) -> Option<u64> {
        match self {
            Self::Exact => None,
            Self::MonteCarlo { samples, .. } => Some(*samples),
        }
    }

    pub fn std_err(&self) -> f64 {
        match self {
            Self::Exact => 0.0,
            Self::MonteCarlo { std_err, .. } => *std_err,
        }
    }

    /// 95% normal-approximation half-width (zero for exact values).
    pub fn ci_half_width(&self) -> f64 {
        Z95 * self.std_err()
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact => f.write_str("exact"),
            Self::MonteCarlo { .. } => f.write_str("montecarlo"),
        }
    }
}

/// Where a statistic was measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Context {
    pub kind: FunctionKind,
    pub n: usize,
    pub z: usize,
    /// Offspring count, or `None` for single-offspring quantities.
    pub lambda: Option<u64>,
}

pub const CONTEXT_HEADER: &str = "kind,n,Z,lambda,method,samples";

impl Context {
    fn csv_prefix(&self, method: &Method) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.kind,
            self.n,
            self.z,
            self.lambda.map(|l| l.to_string()).unwrap_or_default(),
            method,
            method.samples().map(|s| s.to_string()).unwrap_or_default()
        )
    }
}

/// Single-offspring improvement probability `p_imp` at one context.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImprovementStats {
    pub context: Context,
    pub p_imp: f64,
    pub method: Method,
}

impl ImprovementStats {
    /// `q_imp(λ) = 1 - (1 - p_imp)^λ`.
    pub fn q_imp(&self, lambda: f64) -> f64 {
        qimp(self.p_imp, lambda)
    }

    pub fn csv_header() -> String {
        format!("{CONTEXT_HEADER},p_imp,std_err,ci_half_width")
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.context.csv_prefix(&self.method),
            sig9(self.p_imp),
            sig9(self.method.std_err()),
            sig9(self.method.ci_half_width())
        )
    }
}

/// Step distribution and drift decomposition at one `(kind, n, Z, λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftTable {
    pub context: Context,
    pub method: Method,
    pub steps: StepDistribution,
    /// `Δ`. For Monte Carlo this is the sample mean of the unclamped steps.
    pub delta: f64,
    pub delta_1: f64,
    pub delta_ge1: f64,
    pub delta_ge2: f64,
    pub delta_le_m1: f64,
}

impl DriftTable {
    pub fn from_steps(context: Context, method: Method, steps: StepDistribution) -> Self {
        Self {
            context,
            method,
            delta: steps.drift(),
            delta_1: steps.delta_i(1),
            delta_ge1: steps.delta_ge(1),
            delta_ge2: steps.delta_ge(2),
            delta_le_m1: steps.delta_le(-1),
            steps,
        }
    }

    /// Exact OneMax table.
    pub fn exact_onemax(n: usize, z: usize, lambda: u64) -> Self {
        let steps = onemax_step_distribution_exact(n, z, lambda, I_MAX);
        Self::from_steps(
            Context {
                kind: FunctionKind::OneMax,
                n,
                z,
                lambda: Some(lambda),
            },
            Method::Exact,
            steps,
        )
    }

    pub fn csv_header() -> String {
        format!("{CONTEXT_HEADER},delta,delta_1,delta_ge1,delta_ge2,delta_le_m1,p_ge1,std_err,ci_half_width")
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.context.csv_prefix(&self.method),
            sig9(self.delta),
            sig9(self.delta_1),
            sig9(self.delta_ge1),
            sig9(self.delta_ge2),
            sig9(self.delta_le_m1),
            sig9(self.steps.p_ge(1)),
            sig9(self.method.std_err()),
            sig9(self.method.ci_half_width())
        )
    }

    /// Long-format histogram: one row per step size with non-zero mass.
    pub fn write_histogram<W: Write>(&self, mut w: W, header: bool) -> io::Result<()> {
        if header {
            writeln!(w, "{CONTEXT_HEADER},i,p_i")?;
        }
        let m = self.steps.i_max() as i64;
        for i in -m..=m {
            let p = self.steps.p(i);
            if p > 0.0 {
                writeln!(w, "{},{},{}", self.context.csv_prefix(&self.method), i, sig9(p))?;
            }
        }
        Ok(())
    }
}
