/// Histogram truncation used by every exact computation.
pub const I_MAX: usize = 40;

/// `P[Bin(k, rate) = j]` for `j = 0..=i_max`, with the mass above `i_max`
/// folded into the last entry. The pmf comes from the ratio recurrence in the
/// log domain, so no binomial coefficient is ever formed.
pub fn flip_count_distribution(k: usize, rate: f64, i_max: usize) -> Vec<f64> {
    let (mut head, tail) = pmf_with_tail(k, rate, i_max);
    if let Some(last) = head.last_mut() {
        *last += tail;
    }
    head.resize(i_max + 1, 0.0);
    head
}

/// Mass of `Bin(k, rate)` strictly above `i_max`.
pub fn flip_tail_mass(k: usize, rate: f64, i_max: usize) -> f64 {
    pmf_with_tail(k, rate, i_max).1
}

/// Unfolded pmf on `0..=min(k, i_max)` plus the tail mass above `i_max`.
#[allow(clippy::needless_range_loop)]
fn pmf_with_tail(k: usize, rate: f64, i_max: usize) -> (Vec<f64>, f64) {
    assert!((0.0..=1.0).contains(&rate), "rate {rate} outside [0, 1]");
    let top = k.min(i_max);
    let mut pmf = vec![0.0; top + 1];
    if k == 0 || rate == 0.0 {
        pmf[0] = 1.0;
        return (pmf, 0.0);
    }
    if rate == 1.0 {
        return if k <= i_max {
            pmf[k] = 1.0;
            (pmf, 0.0)
        } else {
            (pmf, 1.0)
        };
    }
    let log_odds = rate.ln() - (-rate).ln_1p();
    let mut log_p = k as f64 * (-rate).ln_1p();
    let mut tail = 0.0;
    for j in 0..=k {
        let p = log_p.exp();
        if j <= top {
            pmf[j] = p;
        } else {
            tail += p;
            if p < tail * 1e-18 || p == 0.0 && j as f64 > k as f64 * rate {
                break;
            }
        }
        if j < k {
            log_p += ((k - j) as f64).ln() - ((j + 1) as f64).ln() + log_odds;
        }
    }
    (pmf, tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_at_zero() {
        assert_eq!(flip_count_distribution(0, 0.3, 5), vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn fair_coins() {
        let d = flip_count_distribution(2, 0.5, 2);
        assert!((d[0] - 0.25).abs() < 1e-15);
        assert!((d[1] - 0.5).abs() < 1e-15);
        assert!((d[2] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn power_of_nine_tenths() {
        let d = flip_count_distribution(10, 0.1, 40);
        assert!((d[0] - 0.9f64.powi(10)).abs() < 1e-15);
        assert!((d[0] - 0.34868).abs() < 1e-5);
        assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn folding_keeps_total_mass() {
        let d = flip_count_distribution(100, 0.3, 10);
        assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(d[10] > 0.9);
    }

    #[test]
    fn tail_is_tiny_at_standard_rate() {
        for n in [10usize, 1000, 100_000, 1_000_000] {
            assert!(flip_tail_mass(n, 1.0 / n as f64, I_MAX) < 1e-12);
        }
    }
}
