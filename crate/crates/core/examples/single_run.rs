//! One run of the self-adjusting (1,λ)-EA, printed as a trace excerpt.
//!
//! ```text
//! cargo run --release --example single_run -- [kind] [n] [s]
//! ```

use std::error::Error;

use onelambda::{run, AlgParams, DynamicFitness, FunctionKind};

pub fn run_example(args: &[String]) -> Result<(), Box<dyn Error>> {
    let quick = args.iter().any(|a| a == "--quick");
    let mut pos = args.iter().filter(|a| !a.starts_with("--"));
    let kind: FunctionKind = pos.next().map_or("onemax", |a| a.as_str()).parse()?;
    let n: usize = pos.next().map(|a| a.parse()).transpose()?.unwrap_or(if quick { 100 } else { 1000 });
    let s: f64 = pos.next().map(|a| a.parse()).transpose()?.unwrap_or(2.0);

    let params = AlgParams::new(n, s, 1.5).with_seed(7, 0);
    let trace = run(params, DynamicFitness::deterministic(kind, n))?;

    let every = (trace.records.len() / 10).max(1);
    println!("{:>8} {:>6} {:>10} {:>4} {:>7}", "t", "Z", "lambda", "off", "success");
    for r in trace.records.iter().step_by(every) {
        println!(
            "{:>8} {:>6} {:>10.3} {:>4} {:>7}",
            r.t, r.z_after, r.lambda_before, r.offspring, r.success
        );
    }
    let sum = &trace.summary;
    println!(
        "{kind}, n = {n}, s = {s}: {} after {} generations, {} evaluations",
        sum.outcome, sum.generations, sum.evaluations
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&std::env::args().skip(1).collect::<Vec<_>>())
}
