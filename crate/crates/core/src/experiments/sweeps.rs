//! Grids of improvement probabilities and drift tables.
//!
//! Monte Carlo grid point `(kind i, point j)` uses stream `i << 32 | j`
//! (`i << 48 | j << 24 | l` for drift, with `l` indexing λ), so every point
//! is reproducible on its own and the grid can run in any order.

use rayon::prelude::*;

use crate::analytics::{
    drift_mc, mc_improvement_probability, onemax_step_distribution_exact, pimp_exact_dbv, pimp_exact_onemax, Context, DriftTable,
    ImprovementStats, Method, I_MAX,
};
use crate::fitness::FunctionKind;
use crate::rng::RngHandle;

use super::campaign::{fitness_for, thread_pool};
use super::ExperimentError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PimpMethod {
    Exact,
    MonteCarlo { points: u64, offspring_per_point: u64 },
}

/// `p_imp` for every kind at every OneMax value in `oms`, kind-major.
pub fn pimp_sweep(
    kinds: &[FunctionKind],
    n: usize,
    oms: &[usize],
    method: PimpMethod,
    seed: u64,
    threads: usize,
) -> Result<Vec<ImprovementStats>, ExperimentError> {
    if let Some(&om) = oms.iter().find(|&&om| om > n) {
        return Err(ExperimentError::Config(format!("OneMax value {om} exceeds n = {n}")));
    }
    match method {
        PimpMethod::Exact => {
            let mut out = Vec::new();
            for &kind in kinds {
                let f = match kind {
                    FunctionKind::OneMax => pimp_exact_onemax,
                    FunctionKind::DynamicBinVal => pimp_exact_dbv,
                    other => return Err(ExperimentError::Config(format!("no exact improvement probability for {other}"))),
                };
                out.extend(oms.iter().map(|&om| ImprovementStats {
                    context: Context {
                        kind,
                        n,
                        z: n - om,
                        lambda: None,
                    },
                    p_imp: f(n, n - om),
                    method: Method::Exact,
                }));
            }
            Ok(out)
        }
        PimpMethod::MonteCarlo {
            points,
            offspring_per_point,
        } => {
            if points == 0 || offspring_per_point == 0 {
                return Err(ExperimentError::Config("points and offspring per point must be positive".into()));
            }
            let jobs: Vec<(u64, FunctionKind, u64, usize)> = kinds
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| oms.iter().enumerate().map(move |(j, &om)| (i as u64, k, j as u64, om)))
                .collect();
            let pool = thread_pool(threads)?;
            Ok(pool.install(|| {
                jobs.par_iter()
                    .map(|&(i, kind, j, om)| {
                        let stream = i << 32 | j;
                        let mut f = fitness_for(kind, n, seed, stream);
                        let mut rng = RngHandle::new(seed, stream);
                        mc_improvement_probability(&mut f, n, om, points, offspring_per_point, &mut rng)
                    })
                    .collect()
            }))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DriftMethod {
    Exact,
    MonteCarlo { trials: u64 },
}

/// Drift tables over kinds × `zs` × `lambdas`, in that nesting order.
pub fn drift_sweep(
    kinds: &[FunctionKind],
    n: usize,
    zs: &[usize],
    lambdas: &[u64],
    method: DriftMethod,
    seed: u64,
    threads: usize,
) -> Result<Vec<DriftTable>, ExperimentError> {
    if let Some(&z) = zs.iter().find(|&&z| z > n) {
        return Err(ExperimentError::Config(format!("Z = {z} exceeds n = {n}")));
    }
    if lambdas.contains(&0) {
        return Err(ExperimentError::Config("lambda must be at least 1".into()));
    }
    let jobs: Vec<(u64, FunctionKind, u64, usize, u64, u64)> = kinds
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| {
            zs.iter().enumerate().flat_map(move |(j, &z)| {
                lambdas
                    .iter()
                    .enumerate()
                    .map(move |(l, &lam)| (i as u64, k, j as u64, z, l as u64, lam))
            })
        })
        .collect();
    match method {
        DriftMethod::Exact => jobs
            .iter()
            .map(|&(_, kind, _, z, _, lam)| match kind {
                FunctionKind::OneMax => Ok(DriftTable::from_steps(
                    Context {
                        kind,
                        n,
                        z,
                        lambda: Some(lam),
                    },
                    Method::Exact,
                    onemax_step_distribution_exact(n, z, lam, I_MAX),
                )),
                other => Err(ExperimentError::Config(format!(
                    "exact drift is only available for onemax, not {other}"
                ))),
            })
            .collect(),
        DriftMethod::MonteCarlo { trials } => {
            if trials == 0 {
                return Err(ExperimentError::Config("trials must be positive".into()));
            }
            let pool = thread_pool(threads)?;
            Ok(pool.install(|| {
                jobs.par_iter()
                    .map(|&(i, kind, j, z, l, lam)| {
                        let stream = i << 48 | j << 24 | l;
                        let mut f = fitness_for(kind, n, seed, stream);
                        let mut rng = RngHandle::new(seed, stream);
                        drift_mc(&mut f, n, z, lam, trials, &mut rng)
                    })
                    .collect()
            }))
        }
    }
}
