//! Equilibrium population sizes `λ*` for OneMax and Dynamic BinVal and
//! their ratio, which stays near `1/(e-1)`.
//!
//! ```text
//! cargo run --release --example equilibrium -- [s]
//! ```

use std::error::Error;

use onelambda::analytics::{lambda_star, pimp_exact_dbv, pimp_exact_onemax};

pub fn run_example(args: &[String]) -> Result<(), Box<dyn Error>> {
    let s: f64 = args
        .iter()
        .find(|a| !a.starts_with("--"))
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(3.0);
    println!("s = {s}, limit ratio 1/(e-1) = {:.4}", 1.0 / (std::f64::consts::E - 1.0));
    println!("{:>8} {:>4} {:>10} {:>10} {:>7}", "n", "Z", "lam* OM", "lam* DBv", "ratio");
    for n in [1000usize, 1_000_000] {
        for z in [2, 5, 10, 20] {
            let om = lambda_star(pimp_exact_onemax(n, z), s)?;
            let dbv = lambda_star(pimp_exact_dbv(n, z), s)?;
            println!("{n:>8} {z:>4} {om:>10.2} {dbv:>10.2} {:>7.4}", dbv / om);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&std::env::args().skip(1).collect::<Vec<_>>())
}
