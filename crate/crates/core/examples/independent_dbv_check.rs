//! Cross-check of the Dynamic BinVal runtime behaviour with a deliberately
//! naive implementation that shares no code with the library: per-bit
//! Bernoulli mutation, a full Fisher-Yates shuffle every generation, and
//! comparison by scanning positions in weight order.
//!
//! ```text
//! cargo run --release --example independent_dbv_check -- [s] [runs]
//! ```
//!
//! At `s = 2` both implementations stall around 760 one-bits.

use std::cmp::Ordering;
use std::error::Error;

use onelambda::{AlgParams, DynamicFitness, FunctionKind, SaOneLambdaEa};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `order[0]` is the heaviest position.
fn compare(a: &[bool], b: &[bool], order: &[usize]) -> Ordering {
    for &p in order {
        if a[p] != b[p] {
            return if a[p] { Ordering::Greater } else { Ordering::Less };
        }
    }
    Ordering::Equal
}

/// Returns (found, max onemax).
fn naive_run(n: usize, s: f64, budget: u64, seed: u64) -> (bool, usize) {
    let f = 1.5f64;
    let growth = f.powf(1.0 / s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![false; n];
    let mut lambda = 1.0f64;
    let mut order: Vec<usize> = (0..n).collect();
    let mut best_om = 0;
    for _ in 0..budget {
        order.shuffle(&mut rng);
        let k = (lambda + 0.5).floor() as usize;
        let mut best: Option<Vec<bool>> = None;
        let mut ties = 0u32;
        for _ in 0..k {
            let y: Vec<bool> = x.iter().map(|&b| b ^ (rng.gen::<f64>() < 1.0 / n as f64)).collect();
            let ord = best.as_ref().map_or(Ordering::Greater, |b| compare(&y, b, &order));
            match ord {
                Ordering::Greater => {
                    best = Some(y);
                    ties = 1;
                }
                Ordering::Equal => {
                    // Reservoir choice: uniform among the maximizers seen so far.
                    ties += 1;
                    if rng.gen_range(0..ties) == 0 {
                        best = Some(y);
                    }
                }
                Ordering::Less => {}
            }
        }
        let y = best.expect("at least one offspring");
        lambda = if compare(&y, &x, &order) == Ordering::Greater {
            (lambda / f).max(1.0)
        } else {
            lambda * growth
        };
        x = y;
        let om = x.iter().filter(|&&b| b).count();
        best_om = best_om.max(om);
        if om == n {
            return (true, best_om);
        }
    }
    (false, best_om)
}

fn median(mut v: Vec<usize>) -> usize {
    v.sort_unstable();
    v[v.len() / 2]
}

pub fn run_example(args: &[String]) -> Result<(), Box<dyn Error>> {
    let quick = args.iter().any(|a| a == "--quick");
    let mut pos = args.iter().filter(|a| !a.starts_with("--"));
    let s: f64 = pos.next().map(|a| a.parse()).transpose()?.unwrap_or(2.0);
    let runs: u64 = pos.next().map(|a| a.parse()).transpose()?.unwrap_or(if quick { 1 } else { 5 });
    let (n, budget) = if quick { (100, 20_000) } else { (1000, 500_000) };

    let naive: Vec<(bool, usize)> = (0..runs).map(|r| naive_run(n, s, budget, 1000 + r)).collect();
    let library: Vec<(bool, usize)> = (0..runs)
        .map(|r| {
            let p = AlgParams::new(n, s, 1.5).with_seed(1000, r).with_budget(budget);
            let sum = SaOneLambdaEa::new(p, DynamicFitness::deterministic(FunctionKind::DynamicBinVal, n))
                .expect("valid")
                .run_observed(|_| {});
            (sum.outcome.found(), sum.max_onemax)
        })
        .collect();
    for (name, res) in [("naive", naive), ("library", library)] {
        let found = res.iter().filter(|r| r.0).count();
        println!(
            "{name:>8}: found {found}/{runs}, median max onemax {}",
            median(res.iter().map(|r| r.1).collect())
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&std::env::args().skip(1).collect::<Vec<_>>())
}
