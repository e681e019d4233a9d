//! The `h(λ) = -½ log_F λ` potential: the simulated one-generation drift of
//! `H = h(λ)` against `(1 - (s+1) q_imp) / (2s)`.
//!
//! ```text
//! cargo run --release --example potential
//! ```

use std::error::Error;

use onelambda::analytics::{drift_h_formula, h_drift_mc, pimp_exact_onemax, qimp, PotentialParams};
use onelambda::{round_nearest, DynamicFitness, FunctionKind, RngHandle};

pub fn run_example(args: &[String]) -> Result<(), Box<dyn Error>> {
    let quick = args.iter().any(|a| a == "--quick");
    let samples = if quick { 5_000 } else { 100_000 };
    let n = 1000;
    let mut rng = RngHandle::new(11, 0);
    let mut om = DynamicFitness::deterministic(FunctionKind::OneMax, n);

    println!(
        "{:>4} {:>6} {:>5} {:>9} {:>10} {:>10} {:>6}",
        "Z", "lambda", "s", "q_imp", "formula", "simulated", "sigmas"
    );
    for (z, lambda, s) in [(100, 3.0, 3.0), (30, 8.0, 2.0), (30, 12.5, 6.0), (10, 20.0, 1.0)] {
        let pp = PotentialParams { update_strength: 1.5, s };
        let q = qimp(pimp_exact_onemax(n, z), round_nearest(lambda) as f64);
        let formula = drift_h_formula(q, s);
        let est = h_drift_mc(&mut om, n, z, lambda, pp, samples, &mut rng);
        println!(
            "{z:>4} {lambda:>6} {s:>5} {q:>9.5} {formula:>10.5} {:>10.5} {:>6.2}",
            est.mean,
            (est.mean - formula) / est.std_err
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&std::env::args().skip(1).collect::<Vec<_>>())
}
