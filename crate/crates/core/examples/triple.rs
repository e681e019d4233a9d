//! `(λ, ε̃, s̃)` triples: the distance where OneMax drift is mildly
//! positive (`Δ_{>=1} ≈ 4|Δ_{<=-1}|`) and the success ratio that makes λ
//! the equilibrium there.
//!
//! ```text
//! cargo run --release --example triple -- [n]
//! ```

use std::error::Error;

use onelambda::analytics::solve_triple;

pub fn run_example(args: &[String]) -> Result<(), Box<dyn Error>> {
    let n: usize = args
        .iter()
        .find(|a| !a.starts_with("--"))
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(1000);
    println!(
        "{:>4} {:>6} {:>9} {:>9} {:>8} {:>9} {:>5}",
        "lam", "Z", "eps", "warm", "s", "ratio", "conv"
    );
    for lambda in [4, 6, 8, 10, 12] {
        let t = solve_triple(lambda, n, 0.25)?;
        println!(
            "{lambda:>4} {:>6} {:>9.5} {:>9.5} {:>8.3} {:>9.4} {:>5}",
            t.z, t.eps, t.warm_start_eps, t.s, t.ratio, t.converged
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&std::env::args().skip(1).collect::<Vec<_>>())
}
