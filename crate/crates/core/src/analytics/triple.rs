//! Finds `(λ, ε, s)` with OneMax drift mildly positive at `Z = εn`:
//! `Δ_{>=1} ≈ 4 |Δ_{<=-1}|` and `λ*(εn, s) = λ`.
//!
//! The ratio `Δ_{>=1} / |Δ_{<=-1}|` is increasing in `Z`, so the search
//! brackets the crossing of 4 starting from `Z0 = round(n · 4e(1-1/e)^λ / λ)`,
//! bisects on integers, and keeps whichever neighbour of the crossing has the
//! smaller residual. `s` then solves `1/(s+1) = q_imp(p_imp(Z), λ)`.

use std::f64::consts::E;

use super::exact::{onemax_step_distribution_exact, pimp_exact_onemax, qimp};
use super::{AnalyticsError, I_MAX};
use crate::format::sig9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triple {
    pub lambda: u64,
    pub n: usize,
    /// Distance to the optimum, `ε n`.
    pub z: usize,
    pub eps: f64,
    pub s: f64,
    /// `Δ_{>=1} / |Δ_{<=-1}|` at `z`.
    pub ratio: f64,
    /// `|Δ_{>=1} - 4 |Δ_{<=-1}||` at `z`.
    pub residual: f64,
    pub delta_ge1: f64,
    pub delta_le_m1: f64,
    pub warm_start_eps: f64,
    /// Whether `residual <= tolerance * |Δ_{<=-1}|`.
    pub converged: bool,
}

impl Triple {
    pub const CSV_HEADER: &'static str = "lambda,n,Z,eps,s,ratio,residual,delta_ge1,delta_le_m1,warm_start_eps,converged";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.lambda,
            self.n,
            self.z,
            sig9(self.eps),
            sig9(self.s),
            sig9(self.ratio),
            sig9(self.residual),
            sig9(self.delta_ge1),
            sig9(self.delta_le_m1),
            sig9(self.warm_start_eps),
            self.converged
        )
    }
}

/// `4e (1 - 1/e)^λ / λ`.
pub fn warm_start_eps(lambda: u64) -> f64 {
    4.0 * E * (1.0 - 1.0 / E).powi(lambda as i32) / lambda as f64
}

struct Eval {
    ge1: f64,
    le_m1: f64,
}

impl Eval {
    fn at(n: usize, z: usize, lambda: u64) -> Self {
        let d = onemax_step_distribution_exact(n, z, lambda, I_MAX);
        Self {
            ge1: d.delta_ge(1),
            le_m1: d.delta_le(-1),
        }
    }

    fn above(&self) -> bool {
        self.ge1 >= 4.0 * self.le_m1.abs()
    }

    fn residual(&self) -> f64 {
        (self.ge1 - 4.0 * self.le_m1.abs()).abs()
    }
}

pub fn solve_triple(lambda: u64, n: usize, tolerance: f64) -> Result<Triple, AnalyticsError> {
    if lambda < 2 {
        return Err(AnalyticsError::Domain(format!("triple needs lambda >= 2, got {lambda}")));
    }
    if n < 2 {
        return Err(AnalyticsError::Domain(format!("triple needs n >= 2, got {n}")));
    }
    let warm = warm_start_eps(lambda);
    let z0 = ((warm * n as f64).round() as usize).clamp(1, n);

    // Bracket: lo below the crossing (or 1), hi at/above it (or n).
    let (mut lo, mut hi);
    if Eval::at(n, z0, lambda).above() {
        hi = z0;
        let mut step = 1;
        lo = z0.saturating_sub(step).max(1);
        while lo > 1 && Eval::at(n, lo, lambda).above() {
            hi = lo;
            step *= 2;
            lo = lo.saturating_sub(step).max(1);
        }
    } else {
        lo = z0;
        let mut step = 1;
        hi = (z0 + step).min(n);
        while hi < n && !Eval::at(n, hi, lambda).above() {
            lo = hi;
            step *= 2;
            hi = (hi + step).min(n);
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if Eval::at(n, mid, lambda).above() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (ev_lo, ev_hi) = (Eval::at(n, lo, lambda), Eval::at(n, hi, lambda));
    let (z, ev) = if ev_lo.residual() <= ev_hi.residual() {
        (lo, ev_lo)
    } else {
        (hi, ev_hi)
    };

    let q = qimp(pimp_exact_onemax(n, z), lambda as f64);
    if !(q > 0.0 && q < 1.0) {
        return Err(AnalyticsError::Domain(format!("q_imp = {q} at Z = {z} admits no success ratio")));
    }
    let residual = ev.residual();
    Ok(Triple {
        lambda,
        n,
        z,
        eps: z as f64 / n as f64,
        s: 1.0 / q - 1.0,
        ratio: ev.ge1 / ev.le_m1.abs(),
        residual,
        delta_ge1: ev.ge1,
        delta_le_m1: ev.le_m1,
        warm_start_eps: warm,
        converged: residual <= tolerance * ev.le_m1.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn warm_start_for_eight() {
        assert!((warm_start_eps(8) - 0.03465).abs() < 5e-6);
    }

    #[test]
    fn rejects_small_lambda() {
        assert!(solve_triple(1, 1000, 1.0).is_err());
    }
}
