//! Single-offspring improvement probability along the OneMax axis: exact
//! values for OneMax and Dynamic BinVal, Monte Carlo for every kind.
//!
//! ```text
//! cargo run --release --example improvement_probability
//! ```

use std::error::Error;

use onelambda::analytics::{pimp_exact_dbv, pimp_exact_onemax};
use onelambda::experiments::{pimp_sweep, PimpMethod};
use onelambda::FunctionKind;

pub fn run_example(args: &[String]) -> Result<(), Box<dyn Error>> {
    let quick = args.iter().any(|a| a == "--quick");
    let n = 1000;
    let oms: Vec<usize> = (500..=950).step_by(50).chain([990]).collect();
    let (points, offspring) = if quick { (50, 20) } else { (1000, 100) };
    let mut kinds = FunctionKind::standard_set().to_vec();
    kinds.push("hottopic".parse()?);

    let stats = pimp_sweep(
        &kinds,
        n,
        &oms,
        PimpMethod::MonteCarlo {
            points,
            offspring_per_point: offspring,
        },
        1,
        0,
    )?;

    print!("{:>5} {:>9} {:>9}", "om", "OM exact", "DBv exact");
    for k in &kinds {
        print!(" {:>10}", k.id());
    }
    println!();
    for (j, &om) in oms.iter().enumerate() {
        print!("{om:>5} {:>9.5} {:>9.5}", pimp_exact_onemax(n, n - om), pimp_exact_dbv(n, n - om));
        for i in 0..kinds.len() {
            print!(" {:>10.5}", stats[i * oms.len() + j].p_imp);
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&std::env::args().skip(1).collect::<Vec<_>>())
}
