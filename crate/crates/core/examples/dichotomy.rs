//! OneMax vs Dynamic BinVal from the λ = 8 triple with `F = 1.03`, plus the
//! `s = 0.5` control where both functions are easy.
//!
//! ```text
//! cargo run --release --example dichotomy -- [runs]
//! ```

use std::error::Error;

use onelambda::experiments::{theorem_dichotomy, DichotomyConfig, DichotomyReport};

fn show(label: &str, r: &DichotomyReport) {
    println!("{label}: Z0 = {}, s = {:.3}, lambda_init = {}", r.triple.z, r.s, r.lambda_init);
    for arm in &r.arms {
        let z = arm.terminal_z(r.config.n);
        println!(
            "  {:>10}: found {:>2}/{}, mean generations when found {:>8}, terminal Z median {}",
            arm.kind.id(),
            arm.found(),
            arm.runs.len(),
            arm.mean_generations_found().map_or("-".into(), |g| format!("{g:.0}")),
            z[z.len() / 2]
        );
    }
}

pub fn run_example(args: &[String]) -> Result<(), Box<dyn Error>> {
    let quick = args.iter().any(|a| a == "--quick");
    let runs: u64 = args
        .iter()
        .find(|a| !a.starts_with("--"))
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(if quick { 3 } else { 20 });

    let mut cfg = DichotomyConfig::new(8, 1000, 0.03, runs);
    if quick {
        cfg.budget = 20_000;
    }
    show("solved s", &theorem_dichotomy(&cfg)?);
    cfg.s_override = Some(0.5);
    show("control s = 0.5", &theorem_dichotomy(&cfg)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&std::env::args().skip(1).collect::<Vec<_>>())
}
