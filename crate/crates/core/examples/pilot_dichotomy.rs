//! Pilot for the dichotomy thresholds: the λ = 8, n = 1000, η = 0.03
//! setting over several master seeds.
//!
//! ```text
//! cargo run --release --example pilot_dichotomy -- [first_seed] [last_seed]
//! ```

use onelambda::experiments::{theorem_dichotomy, DichotomyConfig};
use onelambda::FunctionKind;

pub fn run_example(args: &[String]) -> Result<(), Box<dyn std::error::Error>> {
    let mut pos = args.iter().filter(|a| !a.starts_with("--"));
    let first: u64 = pos.next().map(|a| a.parse()).transpose()?.unwrap_or(1);
    let last: u64 = pos.next().map(|a| a.parse()).transpose()?.unwrap_or(30);
    let runs = if args.iter().any(|a| a == "--quick") { 2 } else { 20 };

    println!("seed,onemax_found,dbv_found,onemax_mean_generations,separation");
    let (mut om_total, mut dbv_total, mut om_worst, mut dbv_worst) = (0, 0, usize::MAX, 0);
    for seed in first..=last {
        let mut cfg = DichotomyConfig::new(8, 1000, 0.03, runs);
        cfg.seed = seed;
        let report = theorem_dichotomy(&cfg)?;
        let om = report.arm(FunctionKind::OneMax);
        let dbv = report.arm(FunctionKind::DynamicBinVal);
        println!(
            "{seed},{},{},{:.0},{:.2}",
            om.found(),
            dbv.found(),
            om.mean_generations_found().unwrap_or(f64::NAN),
            report.separation()
        );
        om_total += om.found();
        dbv_total += dbv.found();
        om_worst = om_worst.min(om.found());
        dbv_worst = dbv_worst.max(dbv.found());
    }
    let total = runs * (last - first + 1);
    println!("# onemax {om_total}/{total} (worst seed {om_worst}/{runs}), dynbinval {dbv_total}/{total} (worst seed {dbv_worst}/{runs})");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(&std::env::args().skip(1).collect::<Vec<_>>())
}
