//! Exact improvement probabilities and OneMax step distributions.
//!
//! A single offspring of a parent with `Z` zero-bits flips `A ~ Bin(Z, c/n)`
//! zero-bits and `B ~ Bin(n - Z, c/n)` one-bits, independently. On OneMax
//! its change in distance is `D = A - B`; under comma selection the parent is
//! replaced by the best of `λ` i.i.d. offspring, so `Z^t - Z^{t+1}` is the
//! maximum of `λ` copies of `D` and `P[max <= i] = P[D <= i]^λ`.

use super::binomial::{flip_count_distribution, flip_tail_mass, I_MAX};
use super::AnalyticsError;

fn standard_rate(n: usize) -> f64 {
    1.0 / n as f64
}

/// `P[Bin(Z, rate) > B]`: the OneMax improvement probability.
pub fn pimp_exact_onemax_with_rate(n: usize, z: usize, rate: f64) -> f64 {
    assert!(z <= n, "Z = {z} exceeds n = {n}");
    if z == 0 {
        return 0.0;
    }
    let a = flip_count_distribution(z, rate, I_MAX);
    let b = flip_count_distribution(n - z, rate, I_MAX);
    let mut below = 0.0; // P[B <= j - 1]
    let mut p = 0.0;
    for j in 1..=I_MAX {
        below += b[j - 1];
        p += a[j] * below;
    }
    p
}

/// OneMax improvement probability at distance `Z` with mutation rate `1/n`.
pub fn pimp_exact_onemax(n: usize, z: usize) -> f64 {
    pimp_exact_onemax_with_rate(n, z, standard_rate(n))
}

/// Dynamic BinVal improvement probability. Given `a >= 1` zero-flips and `b`
/// one-flips, the heaviest flipped position under a uniform permutation is a
/// zero-flip with probability `a / (a + b)`.
pub fn pimp_exact_dbv_with_rate(n: usize, z: usize, rate: f64) -> f64 {
    assert!(z <= n, "Z = {z} exceeds n = {n}");
    if z == 0 {
        return 0.0;
    }
    let a = flip_count_distribution(z, rate, I_MAX);
    let b = flip_count_distribution(n - z, rate, I_MAX);
    let mut p = 0.0;
    for (i, &pa) in a.iter().enumerate().skip(1) {
        let inner: f64 = b.iter().enumerate().map(|(j, &pb)| pb * i as f64 / (i + j) as f64).sum();
        p += pa * inner;
    }
    p
}

/// Dynamic BinVal improvement probability at distance `Z` with mutation rate `1/n`.
pub fn pimp_exact_dbv(n: usize, z: usize) -> f64 {
    pimp_exact_dbv_with_rate(n, z, standard_rate(n))
}

/// `1 - (1 - p)^λ`, evaluated as `-expm1(λ ln(1 - p))`. Defined for real `λ > 0`.
pub fn qimp(p_imp: f64, lambda: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p_imp));
    if p_imp == 0.0 {
        return 0.0;
    }
    -(lambda * (-p_imp).ln_1p()).exp_m1()
}

/// Equilibrium population size `log_{1-p}(s/(s+1))`, the real `λ` with `qimp(p, λ) = 1/(s+1)`.
pub fn lambda_star(p_imp: f64, s: f64) -> Result<f64, AnalyticsError> {
    if !(p_imp > 0.0 && p_imp < 1.0) {
        return Err(AnalyticsError::Domain(format!("lambda_star needs 0 < p_imp < 1, got {p_imp}")));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(AnalyticsError::Domain(format!("lambda_star needs s > 0, got {s}")));
    }
    // ln(s/(s+1)) = -ln(1 + 1/s)
    Ok(-(1.0 / s).ln_1p() / (-p_imp).ln_1p())
}

/// Distribution of an integer step `i = Z^t - Z^{t+1}` on `[-i_max, i_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepDistribution {
    i_max: usize,
    probs: Vec<f64>,
    /// Probability mass folded into the end bins.
    pub tail_mass: f64,
}

impl StepDistribution {
    pub fn from_probs(i_max: usize, probs: Vec<f64>, tail_mass: f64) -> Self {
        assert_eq!(probs.len(), 2 * i_max + 1);
        Self { i_max, probs, tail_mass }
    }

    pub fn i_max(&self) -> usize {
        self.i_max
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `p_i`; zero outside the support.
    pub fn p(&self, i: i64) -> f64 {
        let idx = i + self.i_max as i64;
        if idx < 0 || idx as usize >= self.probs.len() {
            0.0
        } else {
            self.probs[idx as usize]
        }
    }

    fn range(&self) -> std::ops::RangeInclusive<i64> {
        -(self.i_max as i64)..=self.i_max as i64
    }

    pub fn p_ge(&self, i: i64) -> f64 {
        self.range().filter(|&j| j >= i).map(|j| self.p(j)).sum()
    }

    pub fn p_le(&self, i: i64) -> f64 {
        self.range().filter(|&j| j <= i).map(|j| self.p(j)).sum()
    }

    /// `Δ_i = i p_i`.
    pub fn delta_i(&self, i: i64) -> f64 {
        i as f64 * self.p(i)
    }

    /// `Δ_{>=i}`.
    pub fn delta_ge(&self, i: i64) -> f64 {
        self.range().filter(|&j| j >= i).map(|j| self.delta_i(j)).sum()
    }

    /// `Δ_{<=i}` (non-positive for `i <= 0`).
    pub fn delta_le(&self, i: i64) -> f64 {
        self.range().filter(|&j| j <= i).map(|j| self.delta_i(j)).sum()
    }

    /// `Δ = E[Z^t - Z^{t+1}]`.
    pub fn drift(&self) -> f64 {
        self.range().map(|j| self.delta_i(j)).sum()
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Distribution of `D = A - B` for a single offspring, on `[-i_max, i_max]`.
pub fn single_offspring_delta(n: usize, z: usize, rate: f64, i_max: usize) -> StepDistribution {
    assert!(z <= n, "Z = {z} exceeds n = {n}");
    let a = flip_count_distribution(z, rate, i_max);
    let b = flip_count_distribution(n - z, rate, i_max);
    let tail = flip_tail_mass(z, rate, i_max) + flip_tail_mass(n - z, rate, i_max);
    let mut probs = vec![0.0; 2 * i_max + 1];
    for (i, &pa) in a.iter().enumerate() {
        if pa == 0.0 {
            continue;
        }
        for (j, &pb) in b.iter().enumerate() {
            probs[(i_max + i) - j] += pa * pb;
        }
    }
    StepDistribution::from_probs(i_max, probs, tail)
}

/// Exact distribution of `Z^t - Z^{t+1}` on OneMax with `λ` offspring and rate `1/n`.
pub fn onemax_step_distribution_exact(n: usize, z: usize, lambda: u64, i_max: usize) -> StepDistribution {
    onemax_step_distribution_with_rate(n, z, lambda, standard_rate(n), i_max)
}

pub fn onemax_step_distribution_with_rate(n: usize, z: usize, lambda: u64, rate: f64, i_max: usize) -> StepDistribution {
    assert!(lambda >= 1, "need at least one offspring");
    let single = single_offspring_delta(n, z, rate, i_max);
    let lam = lambda as f64;
    let len = 2 * i_max + 1;
    // cdf[k] = P[D <= k - i_max]; upper[k] = P[D > k - i_max], summed from the top.
    let mut cdf = vec![0.0; len];
    let mut acc = 0.0;
    for (c, p) in cdf.iter_mut().zip(&single.probs) {
        acc += p;
        *c = acc;
    }
    let mut upper = vec![0.0; len];
    let mut acc = 0.0;
    for k in (0..len).rev() {
        upper[k] = acc;
        acc += single.probs[k];
    }
    let mut probs = vec![0.0; len];
    for k in 0..len {
        let i = k as i64 - i_max as i64;
        probs[k] = if i >= 1 {
            // P[M > i-1] - P[M > i]
            qimp(upper[k - 1].min(1.0), lam) - qimp(upper[k].min(1.0), lam)
        } else {
            let below = if k == 0 { 0.0 } else { cdf[k - 1].min(1.0).powf(lam) };
            cdf[k].min(1.0).powf(lam) - below
        };
    }
    let tail = 1.0 - (1.0 - single.tail_mass).powf(lam);
    StepDistribution::from_probs(i_max, probs, tail)
}
