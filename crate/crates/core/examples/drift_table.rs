//! Drift of `Z` for OneMax (exact) and Dynamic BinVal (Monte Carlo) at a
//! few distances and offspring counts, with the `Δ_{>=1}` / `Δ_{<=-1}` split.
//!
//! ```text
//! cargo run --release --example drift_table
//! ```

use std::error::Error;

use onelambda::analytics::{drift_mc, DriftTable};
use onelambda::{DynamicFitness, FunctionKind, RngHandle};

pub fn run_example(args: &[String]) -> Result<(), Box<dyn Error>> {
    let quick = args.iter().any(|a| a == "--quick");
    let n = 1000;
    let trials = if quick { 2_000 } else { 200_000 };
    let mut rng = RngHandle::new(3, 0);
    let mut dbv = DynamicFitness::deterministic(FunctionKind::DynamicBinVal, n);

    println!(
        "{:>4} {:>3} | {:>9} {:>9} {:>9} | {:>9} {:>9} {:>9}",
        "Z", "lam", "OM delta", "ge1", "le-1", "DBv delta", "ge1", "le-1"
    );
    for z in [250, 100, 30] {
        for lambda in [2, 4, 8] {
            let om = DriftTable::exact_onemax(n, z, lambda);
            let mc = drift_mc(&mut dbv, n, z, lambda, trials, &mut rng);
            println!(
                "{z:>4} {lambda:>3} | {:>9.4} {:>9.4} {:>9.4} | {:>9.4} {:>9.4} {:>9.4}",
                om.delta, om.delta_ge1, om.delta_le_m1, mc.delta, mc.delta_ge1, mc.delta_le_m1
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&std::env::args().skip(1).collect::<Vec<_>>())
}
