use std::cmp::Ordering;

use crate::bits::{BitString, MutationParams, Mutator};
use crate::engine::{growth_factor, round_nearest, update_lambda, OffspringPool};
use crate::fitness::DynamicFitness;
use crate::rng::RngHandle;

use super::{potential_h, Context, DriftTable, ImprovementStats, Method, PotentialParams, StepDistribution, I_MAX};

/// Monte Carlo drift at `(n, Z, λ)`: each trial draws a uniformly random parent
/// with exactly `Z` zero-bits, installs a fresh epoch, and runs one selection
/// round. The histogram is clamped to `[-I_MAX, I_MAX]`; `Δ` and its standard
/// error use the unclamped steps.
pub fn drift_mc(fitness: &mut DynamicFitness, n: usize, z: usize, lambda: u64, trials: u64, rng: &mut RngHandle) -> DriftTable {
    assert!(trials >= 1 && lambda >= 1);
    assert_eq!(fitness.dimension(), n);
    let mutator = Mutator::new(MutationParams::standard(n)).expect("standard rate is valid");
    let mut pool = OffspringPool::new();
    let mut counts = vec![0u64; 2 * I_MAX + 1];
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..trials {
        let parent = BitString::random_with_zeros(n, z, rng).expect("Z <= n");
        fitness.begin_epoch(&parent, rng);
        let chosen = pool.generate_and_select(&parent, lambda, &mutator, fitness, rng);
        let step: i64 = pool
            .offspring(chosen)
            .iter()
            .map(|&p| if parent.get(p as usize) { -1 } else { 1 })
            .sum();
        let idx = (step.clamp(-(I_MAX as i64), I_MAX as i64) + I_MAX as i64) as usize;
        counts[idx] += 1;
        sum += step as f64;
        sum_sq += (step * step) as f64;
    }
    let t = trials as f64;
    let mean = sum / t;
    let var = if trials > 1 {
        (sum_sq - t * mean * mean).max(0.0) / (t - 1.0)
    } else {
        0.0
    };
    let probs = counts.iter().map(|&c| c as f64 / t).collect();
    let steps = StepDistribution::from_probs(I_MAX, probs, 0.0);
    let mut table = DriftTable::from_steps(
        Context {
            kind: fitness.kind(),
            n,
            z,
            lambda: Some(lambda),
        },
        Method::MonteCarlo {
            samples: trials,
            std_err: (var / t).sqrt(),
        },
        steps,
    );
    table.delta = mean;
    table
}

/// Frequency of a single offspring being strictly fitter than its parent:
/// `points` random parents with `om_value` one-bits, `offspring_per_point`
/// offspring each. Dynamic kinds get a fresh epoch per offspring. The standard
/// error is computed from the per-point frequencies, so it accounts for
/// parent-to-parent variation on non-symmetric functions.
pub fn mc_improvement_probability(
    fitness: &mut DynamicFitness,
    n: usize,
    om_value: usize,
    points: u64,
    offspring_per_point: u64,
    rng: &mut RngHandle,
) -> ImprovementStats {
    assert!(points >= 1 && offspring_per_point >= 1);
    assert!(om_value <= n);
    assert_eq!(fitness.dimension(), n);
    let z = n - om_value;
    let mutator = Mutator::new(MutationParams::standard(n)).expect("standard rate is valid");
    let dynamic = fitness.kind().is_dynamic();
    let mut flips = Vec::new();
    let (mut total, mut sum_sq) = (0u64, 0.0);
    for _ in 0..points {
        let parent = BitString::random_with_zeros(n, z, rng).expect("om <= n");
        if !dynamic {
            fitness.begin_epoch(&parent, rng);
        }
        let mut wins = 0u64;
        for _ in 0..offspring_per_point {
            if dynamic {
                fitness.begin_epoch(&parent, rng);
            }
            mutator.sample_flips(rng, &mut flips);
            if fitness.compare_flips(&parent, &flips, &[]) == Ordering::Greater {
                wins += 1;
            }
        }
        total += wins;
        let f = wins as f64 / offspring_per_point as f64;
        sum_sq += f * f;
    }
    let samples = points * offspring_per_point;
    let p = total as f64 / samples as f64;
    let k = points as f64;
    let std_err = if points > 1 {
        ((sum_sq - k * p * p).max(0.0) / (k - 1.0) / k).sqrt()
    } else {
        (p * (1.0 - p) / samples as f64).sqrt()
    };
    ImprovementStats {
        context: Context {
            kind: fitness.kind(),
            n,
            z,
            lambda: None,
        },
        p_imp: p,
        method: Method::MonteCarlo { samples, std_err },
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
    pub samples: u64,
}

/// Monte Carlo drift of `H = h(λ)`: the mean of `H^t - H^{t+1}` over
/// `samples` single generations, each from a fresh random parent with `Z`
/// zero-bits at population size `λ` (real; `round(λ)` offspring), using the
/// engine's own selection and update rule.
pub fn h_drift_mc(
    fitness: &mut DynamicFitness,
    n: usize,
    z: usize,
    lambda: f64,
    pp: PotentialParams,
    samples: u64,
    rng: &mut RngHandle,
) -> Estimate {
    assert!(samples >= 2 && lambda >= 1.0);
    assert_eq!(fitness.dimension(), n);
    let mutator = Mutator::new(MutationParams::standard(n)).expect("standard rate is valid");
    let growth = growth_factor(pp.update_strength, pp.s);
    let count = round_nearest(lambda);
    let h0 = potential_h(lambda, pp);
    let mut pool = OffspringPool::new();
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..samples {
        let parent = BitString::random_with_zeros(n, z, rng).expect("Z <= n");
        fitness.begin_epoch(&parent, rng);
        let chosen = pool.generate_and_select(&parent, count, &mutator, fitness, rng);
        let success = fitness.compare_flips(&parent, pool.offspring(chosen), &[]) == Ordering::Greater;
        let d = h0 - potential_h(update_lambda(lambda, success, pp.update_strength, growth), pp);
        sum += d;
        sum_sq += d * d;
    }
    let k = samples as f64;
    let mean = sum / k;
    Estimate {
        mean,
        std_err: ((sum_sq - k * mean * mean).max(0.0) / (k - 1.0) / k).sqrt(),
        samples,
    }
}
