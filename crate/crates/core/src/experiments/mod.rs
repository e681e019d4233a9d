//! Campaigns, per-level aggregation, parameter sweeps and the desk-scale
//! dichotomy.

mod aggregate;
mod campaign;
mod config;
mod dichotomy;
mod series;
mod sweeps;
pub mod thresholds;

use thiserror::Error;

use crate::analytics::AnalyticsError;
use crate::engine::EngineError;

pub use aggregate::{mean_std, KindAggregate, LevelAggregate, LevelTally, RunLevels, SeriesOptions, AGGREGATE_CSV_HEADER};
pub use campaign::{
    aggregate_file_name, fitness_for, run_campaign, write_campaign, write_manifest, write_summary, CampaignReport, KindReport,
    RUNS_CSV_HEADER, SUMMARY_CSV_HEADER, TOOL_VERSION,
};
pub use config::{parse_budget, CampaignConfig, NormOrder};
pub use dichotomy::{theorem_dichotomy, DichotomyArm, DichotomyConfig, DichotomyReport};
pub use series::{normalize, smooth, smooth_present, SmoothedSeries};
pub use sweeps::{drift_sweep, pimp_sweep, DriftMethod, PimpMethod};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("{0}")]
    Runtime(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
}

impl ExperimentError {
    /// 1 for bad input (including analytics preconditions), 2 for failures
    /// while doing the work.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Engine(_) | Self::Analytics(_) => 1,
            Self::Domain(_) | Self::Io(..) | Self::Runtime(_) => 2,
        }
    }
}
