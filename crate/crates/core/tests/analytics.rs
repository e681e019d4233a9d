mod common;

use common::{binomial_pmf, delta_ge, delta_le, parent_with_zeros, pimp, q, step_distribution, to_f64, OracleKind, QIMP_REFERENCE};
use onelambda::analytics::{
    drift_h_formula, drift_mc, flip_count_distribution, flip_tail_mass, lambda_star, mc_improvement_probability,
    onemax_step_distribution_exact, pimp_exact_dbv, pimp_exact_onemax, potential_h, qimp, solve_triple, warm_start_eps, DriftTable,
    PotentialParams, I_MAX,
};
use onelambda::engine::growth_factor;
use onelambda::{DynamicFitness, FunctionKind, RngHandle};

#[test]
fn flip_count_tables() {
    assert_eq!(flip_count_distribution(0, 0.3, I_MAX)[0], 1.0);
    let d = flip_count_distribution(2, 0.5, I_MAX);
    assert_eq!(&d[..3], &[0.25, 0.5, 0.25]);
    let d = flip_count_distribution(10, 0.1, I_MAX);
    assert!((d[0] - 0.9f64.powi(10)).abs() < 1e-15);
    for j in 0..=10u32 {
        let exact = to_f64(&binomial_pmf(10, j, q(1, 10)));
        assert!((d[j as usize] - exact).abs() < 1e-15, "j = {j}");
    }
    // Folding: the last entry carries everything above i_max.
    let d = flip_count_distribution(20, 0.5, 3);
    assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-13);
    assert!((d[3] - (flip_tail_mass(20, 0.5, 3) + to_f64(&binomial_pmf(20, 3, q(1, 2))))).abs() < 1e-13);
}

#[test]
fn pimp_small_values() {
    assert_eq!(pimp_exact_onemax(10, 0), 0.0);
    assert_eq!(pimp_exact_dbv(10, 0), 0.0);
    assert_eq!(pimp(OracleKind::OneMax, &[false, true]), q(1, 4));
    assert_eq!(pimp(OracleKind::DynBinVal, &[false, true]), q(3, 8));
    assert!((pimp_exact_onemax(2, 1) - 0.25).abs() < 1e-15);
    assert!((pimp_exact_dbv(2, 1) - 0.375).abs() < 1e-15);
}

/// Exact convolution formulas against mask (and permutation) enumeration.
#[test]
fn pimp_matches_enumeration() {
    for n in 1..=6usize {
        for z in 0..=n {
            let x = parent_with_zeros(n, z);
            let om = to_f64(&pimp(OracleKind::OneMax, &x));
            let dbv = to_f64(&pimp(OracleKind::DynBinVal, &x));
            assert!((pimp_exact_onemax(n, z) - om).abs() < 1e-12, "OM n={n} Z={z}");
            assert!((pimp_exact_dbv(n, z) - dbv).abs() < 1e-12, "DBv n={n} Z={z}");
        }
    }
}

#[test]
fn pimp_monte_carlo_matches_exact() {
    let mut rng = RngHandle::new(1, 0);
    let mut f = DynamicFitness::deterministic(FunctionKind::DynamicBinVal, 2);
    let s = mc_improvement_probability(&mut f, 2, 1, 1000, 1000, &mut rng);
    assert!((s.p_imp - 0.375).abs() <= 4.0 * s.method.std_err(), "{}", s.p_imp);

    let mut f = DynamicFitness::deterministic(FunctionKind::OneMax, 1000);
    let s = mc_improvement_probability(&mut f, 1000, 990, 1000, 100, &mut rng);
    let exact = pimp_exact_onemax(1000, 10);
    assert!((s.p_imp - exact).abs() <= 4.0 * s.method.std_err(), "{} vs {exact}", s.p_imp);

    let s = mc_improvement_probability(&mut f, 1000, 1000, 10, 10, &mut rng);
    assert_eq!(s.p_imp, 0.0);
}

#[test]
fn pimp_stays_below_eps() {
    for z in 1..=1000 {
        let eps = z as f64 / 1000.0;
        assert!(pimp_exact_onemax(1000, z) <= eps);
        assert!(pimp_exact_dbv(1000, z) <= eps);
    }
}

#[test]
fn qimp_values_and_stability() {
    assert_eq!(qimp(0.5, 1.0), 0.5);
    assert_eq!(qimp(0.0, 17.0), 0.0);
    assert!((qimp(0.01, 100.0) - 0.63397).abs() < 1e-5);
    for &(p, lambda, reference) in QIMP_REFERENCE {
        let v = qimp(p, lambda);
        assert!(
            ((v - reference) / reference).abs() < 1e-12,
            "p = {p}, lambda = {lambda}: {v} vs {reference}"
        );
    }
}

#[test]
fn lambda_star_identities() {
    assert!((lambda_star(0.5, 1.0).unwrap() - 1.0).abs() < 1e-15);
    assert!(lambda_star(0.0, 1.0).is_err());
    assert!(lambda_star(1.0, 1.0).is_err());
    assert!(lambda_star(0.3, 0.0).is_err());
    let mut rng = RngHandle::new(2, 0);
    for _ in 0..100 {
        let p = 1e-6 + rng.unit_f64() * 0.9;
        let s = 0.05 + rng.unit_f64() * 20.0;
        let l = lambda_star(p, s).unwrap();
        assert!((qimp(p, l) - 1.0 / (s + 1.0)).abs() < 1e-12, "p = {p}, s = {s}");
    }
}

#[test]
fn onemax_step_distribution_examples() {
    let d = onemax_step_distribution_exact(4, 2, 1, I_MAX);
    assert!(d.drift().abs() < 1e-15);
    let d = onemax_step_distribution_exact(2, 1, 2, I_MAX);
    assert!((d.p(1) - 7.0 / 16.0).abs() < 1e-15);
    assert!((d.p(0) - 0.5).abs() < 1e-15);
    assert!((d.p(-1) - 1.0 / 16.0).abs() < 1e-15);
    for n in [1usize, 5, 100] {
        let d = onemax_step_distribution_exact(n, n, 1, I_MAX);
        let expected = 1.0 - (1.0 - 1.0 / n as f64).powi(n as i32);
        assert!((d.p_ge(1) - expected).abs() < 1e-14, "n = {n}");
    }
    for (n, z) in [(10usize, 3usize), (1000, 10), (1000, 600)] {
        let d = onemax_step_distribution_exact(n, z, 1, I_MAX);
        let mean = (2.0 * z as f64 - n as f64) / n as f64;
        assert!((d.drift() - mean).abs() < 1e-12, "n = {n}, Z = {z}");
    }
}

#[test]
fn drift_table_invariants() {
    for (n, z, lambda) in [(1000usize, 27usize, 8u64), (100, 50, 3), (100_000, 400, 25)] {
        let t = DriftTable::exact_onemax(n, z, lambda);
        assert!((t.steps.total() - 1.0).abs() < 1e-12);
        assert!(t.steps.probs().iter().all(|&p| p >= 0.0));
        assert!((t.delta - (t.delta_ge1 + t.delta_le_m1)).abs() < 1e-12);
        assert!((t.delta_1 - t.steps.p(1)).abs() < 1e-15);
        assert!(t.steps.tail_mass < 1e-12, "tail {}", t.steps.tail_mass);
    }
}

/// Exact OneMax step distributions equal exhaustive enumeration.
#[test]
fn onemax_step_distribution_matches_enumeration() {
    for n in 1..=4usize {
        for z in 0..=n {
            for lambda in 1..=3usize {
                let exact = step_distribution(OracleKind::OneMax, &parent_with_zeros(n, z), lambda);
                let d = onemax_step_distribution_exact(n, z, lambda as u64, I_MAX);
                for i in -(n as i64)..=(n as i64) {
                    let p = exact.get(&i).map(to_f64).unwrap_or(0.0);
                    assert!((d.p(i) - p).abs() < 1e-12, "n={n} Z={z} lambda={lambda} i={i}: {} vs {p}", d.p(i));
                }
            }
        }
    }
}

/// Dynamic BinVal never has more positive drift mass and never less negative
/// drift mass than OneMax, for every tiny configuration.
#[test]
fn drift_dominance_by_enumeration() {
    for n in 2..=4usize {
        for z in 1..n {
            for lambda in 1..=3usize {
                let x = parent_with_zeros(n, z);
                let om = step_distribution(OracleKind::OneMax, &x, lambda);
                let dbv = step_distribution(OracleKind::DynBinVal, &x, lambda);
                for (d, name) in [(&om, "OM"), (&dbv, "DBv")] {
                    assert_eq!(d.values().fold(q(0, 1), |a, p| a + *p), q(1, 1), "{name} mass");
                }
                for i in 1..=2i64 {
                    assert!(delta_ge(&dbv, i) <= delta_ge(&om, i), "n={n} Z={z} lambda={lambda} i={i}");
                    assert!(-delta_le(&dbv, -i) >= -delta_le(&om, -i), "n={n} Z={z} lambda={lambda} i={i}");
                }
            }
        }
    }
}

#[test]
fn drift_mc_matches_exact_onemax() {
    let mut rng = RngHandle::new(3, 0);
    let mut f = DynamicFitness::deterministic(FunctionKind::OneMax, 1000);
    for (z, lambda) in [(27usize, 8u64), (300, 2), (10, 20)] {
        let t = drift_mc(&mut f, 1000, z, lambda, 100_000, &mut rng);
        let exact = onemax_step_distribution_exact(1000, z, lambda, I_MAX).drift();
        assert!(
            (t.delta - exact).abs() <= 4.0 * t.method.ci_half_width(),
            "Z={z} lambda={lambda}: {} vs {exact}",
            t.delta
        );
    }
    let t = drift_mc(&mut f, 1000, 0, 4, 10_000, &mut rng);
    assert!(t.delta <= 0.0);
    assert_eq!(t.steps.p_ge(1), 0.0);
}

/// n = 3, Z = 1, λ = 2 on Dynamic BinVal: Monte Carlo drift against the
/// enumeration over both masks, all 6 permutations and tie draws.
#[test]
fn drift_mc_matches_enumeration_dbv() {
    let exact = step_distribution(OracleKind::DynBinVal, &parent_with_zeros(3, 1), 2);
    let delta: f64 = exact.iter().map(|(&i, p)| i as f64 * to_f64(p)).sum();
    let mut rng = RngHandle::new(4, 0);
    let mut f = DynamicFitness::deterministic(FunctionKind::DynamicBinVal, 3);
    let t = drift_mc(&mut f, 3, 1, 2, 1_000_000, &mut rng);
    assert!((t.delta - delta).abs() < 1e-2, "{} vs {delta}", t.delta);
    for i in -3..=3i64 {
        let p = exact.get(&i).map(to_f64).unwrap_or(0.0);
        assert!((t.steps.p(i) - p).abs() < 1e-2, "i = {i}");
    }
}

#[test]
fn potential_values() {
    let pp = PotentialParams {
        update_strength: 1.5,
        s: 3.0,
    };
    assert_eq!(potential_h(1.0, pp), 0.0);
    assert!((potential_h(2.25, pp) + 1.0).abs() < 1e-15);
    let g = growth_factor(1.5, 3.0);
    for lambda in [1.0, 3.7, 100.0] {
        assert!((potential_h(lambda, pp) - potential_h(lambda * g, pp) - 1.0 / 6.0).abs() < 1e-12);
    }
    assert_eq!(drift_h_formula(0.25, 3.0), 0.0);
    assert!((drift_h_formula(0.0, 3.0) - 1.0 / 6.0).abs() < 1e-15);
}

#[test]
fn triple_for_lambda_8() {
    assert!((warm_start_eps(8) - 0.03465).abs() < 1e-5);
    let t = solve_triple(8, 1000, 0.25).unwrap();
    let q_imp = qimp(pimp_exact_onemax(1000, t.z), 8.0);
    assert!((q_imp - 1.0 / (t.s + 1.0)).abs() < 1e-12);
    assert!((3.0..=5.0).contains(&t.ratio), "{}", t.ratio);
    assert!(t.converged);
    assert_eq!(t.z as f64 / 1000.0, t.eps);
    assert!(solve_triple(1, 1000, 0.25).is_err());
}
