use std::collections::BTreeMap;
use std::fs;

use onelambda::experiments::{
    fitness_for, normalize, parse_budget, run_campaign, smooth, smooth_present, theorem_dichotomy, write_campaign, CampaignConfig,
    DichotomyConfig, LevelTally, NormOrder, RunLevels,
};
use onelambda::{run, FunctionKind, RngHandle, SaOneLambdaEa};

fn small_config(kinds: Vec<FunctionKind>, n: usize, s: f64, runs: u64) -> CampaignConfig {
    let mut cfg = CampaignConfig::new(kinds);
    cfg.n = n;
    cfg.s = s;
    cfg.runs = runs;
    cfg.budget = 500 * n as u64;
    cfg.window = 5;
    cfg.seed = 5;
    cfg
}

#[test]
fn smoothing_examples() {
    let xs = [1.0, 4.0, 2.0, 8.0];
    assert_eq!(smooth(&xs, 1).unwrap(), xs.to_vec());
    assert_eq!(smooth(&[2.5; 7], 5).unwrap(), vec![2.5; 7]);
    assert_eq!(smooth(&[0.0, 0.0, 3.0, 0.0, 0.0], 3).unwrap(), vec![0.0, 1.0, 1.0, 1.0, 0.0]);
    assert!(smooth(&xs, 4).is_err());
    let s = smooth_present(&[Some(1.0), None, Some(3.0)], 3).unwrap();
    assert_eq!(s, vec![Some(1.0), None, Some(3.0)]);
}

#[test]
fn normalization_examples() {
    assert_eq!(normalize(&[1.0, 1.0, 2.0]).unwrap(), vec![0.25, 0.25, 0.5]);
    assert_eq!(normalize(&[0.25, 0.25, 0.5]).unwrap(), vec![0.25, 0.25, 0.5]);
    assert!(normalize(&[0.0, 0.0]).is_err());
}

#[test]
fn config_grammar() {
    let cfg: CampaignConfig = "# demo\nfn = onemax\nfn = dbv  # dynamic\nn = 64\ns=2\nF = 1.25\nruns = 3\nbudget = 10n\nstart = random-zeros:5\nseed = 9\nwindow = 3\norder = normalize-first\n"
        .parse()
        .unwrap();
    assert_eq!(cfg.kinds, vec![FunctionKind::OneMax, FunctionKind::DynamicBinVal]);
    assert_eq!(
        (cfg.n, cfg.s, cfg.update_strength, cfg.runs, cfg.budget, cfg.seed),
        (64, 2.0, 1.25, 3, 640, 9)
    );
    assert_eq!(cfg.order, NormOrder::NormalizeFirst);
    assert_eq!(parse_budget("500n", 1000).unwrap(), 500_000);
    assert_eq!(parse_budget("1234", 1000).unwrap(), 1234);
    for bad in [
        "n = 10\n",
        "fn = onemax\nn = 10\nn = 11\n",
        "fn = onemax\ncolour = red\n",
        "fn = onemax\nwindow = 4\n",
        "fn = onemax\nruns = 0\n",
        "fn = nope\n",
    ] {
        let parsed: Result<CampaignConfig, _> = bad.parse();
        assert!(parsed.and_then(|c| c.validate().map(|_| c)).is_err(), "{bad:?}");
    }
    // Output directory and thread count do not change the hash.
    let mut other = cfg.clone();
    other.threads = 3;
    other.out_dir = Some("elsewhere".into());
    assert_eq!(cfg.hash(), other.hash());
    other.seed = 10;
    assert_ne!(cfg.hash(), other.hash());
}

#[test]
fn shipped_configs_parse() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    for name in ["fig2.cfg", "fig3.cfg", "smoke.cfg"] {
        let cfg = CampaignConfig::from_file(&dir.join(name)).unwrap();
        cfg.validate().unwrap();
    }
}

#[test]
fn efficient_regime_campaign_finds_everything() {
    let report = run_campaign(&small_config(vec![FunctionKind::OneMax], 50, 1.0, 10)).unwrap();
    assert_eq!(report.kinds[0].found(), 10);
}

/// With one run the aggregate is the run's own per-level statistics.
#[test]
fn single_run_aggregate_is_the_trace() {
    for kind in [FunctionKind::OneMax, FunctionKind::DynamicBinVal] {
        let cfg = small_config(vec![kind], 60, 1.0, 1);
        let report = run_campaign(&cfg).unwrap();
        let trace = run(cfg.params_for(0), fitness_for(kind, cfg.n, cfg.seed, 0)).unwrap();
        let mut by_level: BTreeMap<usize, (u64, f64, i64, u64)> = BTreeMap::new();
        for r in &trace.records {
            let e = by_level.entry(cfg.n - r.z_before).or_default();
            e.0 += 1;
            e.1 += r.lambda_before;
            e.2 += r.z_decrease();
            e.3 += r.offspring + kind.is_dynamic() as u64;
        }
        let levels = &report.kinds[0].aggregate.levels;
        assert_eq!(levels.len(), cfg.n + 1);
        for l in levels {
            match by_level.get(&l.level) {
                None => {
                    assert_eq!(l.visits, 0);
                    assert!(l.mean_lambda.is_none() && l.generations.is_none());
                }
                Some(&(visits, lambda_sum, drift_sum, evals)) => {
                    assert_eq!(l.visits, visits);
                    let mean_lambda = lambda_sum / visits as f64;
                    assert!((l.mean_lambda.unwrap() / mean_lambda - 1.0).abs() < 1e-12);
                    assert_eq!(l.mean_drift.unwrap(), drift_sum as f64 / visits as f64);
                    assert_eq!(l.generations.unwrap(), visits as f64);
                    assert_eq!(l.evaluations.unwrap(), evals as f64);
                    assert_eq!(l.gen_std.unwrap(), 0.0);
                }
            }
        }
        assert_eq!(report.kinds[0].runs[0], trace.summary);
    }
}

#[test]
fn aggregation_is_order_independent_and_sums_to_totals() {
    let kind = FunctionKind::DynamicBinVal;
    let cfg = small_config(vec![kind], 40, 1.0, 12);
    let per_run: Vec<(RunLevels, u64, u64, Vec<u64>)> = (0..cfg.runs)
        .map(|r| {
            let trace = run(cfg.params_for(r), fitness_for(kind, cfg.n, cfg.seed, r)).unwrap();
            let mut levels = RunLevels::new(cfg.n, kind);
            trace.records.iter().for_each(|rec| levels.observe(rec));
            let offspring = trace.records.iter().map(|r| r.offspring).collect();
            (levels, trace.summary.generations, trace.summary.evaluations, offspring)
        })
        .collect();
    let tally_in = |order: &[usize]| {
        let mut t = LevelTally::new(cfg.n);
        for &i in order {
            t.add_run(&per_run[i].0);
        }
        t
    };
    let forward: Vec<usize> = (0..per_run.len()).collect();
    let mut shuffled = forward.clone();
    RngHandle::new(1, 0).shuffle(&mut shuffled);
    let a = tally_in(&forward);
    let b = tally_in(&shuffled);
    assert_eq!(a, b);
    assert_eq!(a.levels(), b.levels());

    let total_generations: u64 = per_run.iter().map(|p| p.1).sum();
    assert_eq!(a.total_generations(), total_generations);

    // Evaluations: per-level sums against per-generation offspring counts plus one re-evaluation.
    let report = run_campaign(&cfg).unwrap();
    let levels = &report.kinds[0].aggregate.levels;
    let eval_sum: f64 = levels.iter().filter_map(|l| l.evaluations).sum::<f64>() * cfg.runs as f64;
    let from_traces: u64 = per_run.iter().map(|p| p.3.iter().map(|o| o + 1).sum::<u64>()).sum();
    assert!((eval_sum - from_traces as f64).abs() < 1e-6 * from_traces as f64);
    assert_eq!(per_run.iter().map(|p| p.2).sum::<u64>(), from_traces);
    assert_eq!(report.kinds[0].tally, a);
}

#[test]
fn campaign_output_is_reproducible_and_normalized() {
    let mut cfg = small_config(vec![FunctionKind::OneMax, FunctionKind::DynamicBinVal], 40, 1.0, 6);
    cfg.count_window = 3;
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let files_a = write_campaign(&run_campaign(&cfg).unwrap(), dir_a.path()).unwrap();
    cfg.threads = 1;
    let files_b = write_campaign(&run_campaign(&cfg).unwrap(), dir_b.path()).unwrap();
    assert_eq!(files_a.len(), 4);
    for (a, b) in files_a.iter().zip(&files_b) {
        assert_eq!(a.file_name(), b.file_name());
        assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap(), "{}", a.display());
    }
    let manifest = fs::read_to_string(dir_a.path().join("manifest.txt")).unwrap();
    assert!(manifest.contains(&cfg.hash()));
    assert!(manifest.contains("master_seed"));

    let report = run_campaign(&cfg).unwrap();
    for k in &report.kinds {
        for col in [&k.aggregate.generations_norm, &k.aggregate.evaluations_norm] {
            let sum: f64 = col.iter().flatten().sum();
            assert!((sum - 1.0).abs() < 1e-12, "{sum}");
        }
    }
    let csv = fs::read_to_string(dir_a.path().join("aggregate_onemax.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap().split(',').count(), 13);
    assert_eq!(lines.count(), cfg.n + 1);
}

#[test]
fn dichotomy_rejects_eta_outside_band() {
    for eta in [0.005, 0.2] {
        assert!(theorem_dichotomy(&DichotomyConfig::new(8, 1000, eta, 2)).is_err());
    }
}

/// With `s = 0.5` both functions are easy from the triple's start.
#[test]
fn dichotomy_control_inverts() {
    let mut cfg = DichotomyConfig::new(8, 1000, 0.03, 10);
    cfg.s_override = Some(0.5);
    cfg.seed = 3;
    let report = theorem_dichotomy(&cfg).unwrap();
    assert_eq!(report.arm(FunctionKind::OneMax).found(), 10);
    assert_eq!(report.arm(FunctionKind::DynamicBinVal).found(), 10);
}

#[test]
fn runs_use_their_own_stream() {
    let cfg = small_config(vec![FunctionKind::OneMax], 30, 1.0, 3);
    let a = SaOneLambdaEa::new(cfg.params_for(2), fitness_for(FunctionKind::OneMax, 30, cfg.seed, 2))
        .unwrap()
        .run_observed(|_| {});
    let report = run_campaign(&cfg).unwrap();
    assert_eq!(report.kinds[0].runs[2], a);
}
