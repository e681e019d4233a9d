//! A campaign from a config file: per-level aggregates, summary and manifest.
//!
//! ```text
//! cargo run --release --example campaign -- [config] [out_dir]
//! cargo run --release --example campaign -- configs/fig2.cfg out/fig2
//! ```
//!
//! Without arguments it runs `configs/smoke.cfg` into a temporary directory.

use std::error::Error;
use std::path::PathBuf;

use onelambda::experiments::{run_campaign, write_campaign, CampaignConfig};

pub fn run_example(args: &[String]) -> Result<(), Box<dyn Error>> {
    let mut pos = args.iter().filter(|a| !a.starts_with("--"));
    let config = pos
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/smoke.cfg"));
    let cfg = CampaignConfig::from_file(&config)?;
    let out = pos
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join(format!("onelambda-campaign-{}", std::process::id())));

    let report = run_campaign(&cfg)?;
    for path in write_campaign(&report, &out)? {
        println!("wrote {}", path.display());
    }
    println!("{:>10} {:>6} {:>10} {:>14}", "kind", "found", "mean gens", "median max OM");
    for k in &report.kinds {
        let mean = k.runs.iter().map(|r| r.generations as f64).sum::<f64>() / k.runs.len() as f64;
        println!(
            "{:>10} {:>6} {:>10.0} {:>14}",
            k.kind.id(),
            format!("{}/{}", k.found(), k.runs.len()),
            mean,
            k.median_max_onemax()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example(&std::env::args().skip(1).collect::<Vec<_>>())
}
