//! Bit strings, standard bit mutation and the comparator interface: static
//! BinVal and Binary values, a Dynamic BinVal epoch's permutation and the
//! adversarial variant that ranks the parent's 0-bits first.
//!
//! ```text
//! cargo run --example fitness_basics
//! ```

use std::error::Error;

use onelambda::fitness::binary_value;
use onelambda::{mutate, onemax, BitString, DynamicFitness, FunctionKind, MutationParams, RngHandle};

pub fn run_example(_args: &[String]) -> Result<(), Box<dyn Error>> {
    let mut rng = RngHandle::new(42, 0);

    let x: BitString = "1010011100".parse()?;
    let y = mutate(&x, MutationParams::new(2.0, x.len())?, &mut rng)?;
    println!(
        "x = {x} (onemax {}), offspring at rate 2/n: {y} (onemax {})",
        onemax(&x),
        onemax(&y)
    );

    let a: BitString = "101".parse()?;
    let b: BitString = "011".parse()?;
    let bv = DynamicFitness::deterministic(FunctionKind::BinVal, 3);
    println!("BinVal: {a} vs {b} -> {:?}", bv.compare(&a, &b)?);

    let c: BitString = "1001".parse()?;
    let d: BitString = "0110".parse()?;
    let bin = DynamicFitness::deterministic(FunctionKind::Binary, 4);
    println!(
        "Binary: {c} = {}, {d} = {} -> {:?}",
        binary_value(&c),
        binary_value(&d),
        bin.compare(&c, &d)?
    );

    let mut dbv = DynamicFitness::deterministic(FunctionKind::DynamicBinVal, 6);
    let parent = BitString::all_zeros(6);
    for _ in 0..3 {
        dbv.begin_epoch(&parent, &mut rng);
        let perm = dbv.permutation().expect("BinVal family");
        println!("Dynamic BinVal epoch: position carrying weight 2^i = {:?}", perm.as_slice());
    }

    let mut adv = DynamicFitness::deterministic(FunctionKind::AdversarialDynBinVal, 3);
    let p: BitString = "101".parse()?;
    adv.begin_epoch(&p, &mut rng);
    let perm = adv.permutation().expect("BinVal family");
    println!("adversarial epoch for parent {p}: heaviest position {}", perm.as_slice()[2]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&std::env::args().skip(1).collect::<Vec<_>>())
}
