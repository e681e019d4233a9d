#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    /// Update strength `F > 1`.
    pub update_strength: f64,
    pub s: f64,
}

/// `h(λ) = -½ log_F λ`.
pub fn potential_h(lambda: f64, pp: PotentialParams) -> f64 {
    debug_assert!(pp.update_strength > 1.0);
    -0.5 * lambda.ln() / pp.update_strength.ln()
}

/// `G = Z + h(λ)`.
pub fn potential_g(z: usize, lambda: f64, pp: PotentialParams) -> f64 {
    z as f64 + potential_h(lambda, pp)
}

/// Expected one-step decrease of `H = h(λ)` when `λ >= F`: success raises `H`
/// by ½, failure lowers it by `1/(2s)`, so the drift is `(1 - (s+1) q) / (2s)`.
pub fn drift_h_formula(q_imp: f64, s: f64) -> f64 {
    (1.0 - (s + 1.0) * q_imp) / (2.0 * s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PP: PotentialParams = PotentialParams {
        update_strength: 1.5,
        s: 3.0,
    };

    #[test]
    fn h_values() {
        assert_eq!(potential_h(1.0, PP), 0.0);
        assert!((potential_h(1.5 * 1.5, PP) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn failure_lowers_h_by_one_over_2s() {
        let lambda = 7.3;
        let grown = lambda * crate::engine::growth_factor(PP.update_strength, PP.s);
        let change = potential_h(grown, PP) - potential_h(lambda, PP);
        assert!((change + 1.0 / (2.0 * PP.s)).abs() < 1e-14);
    }

    #[test]
    fn formula_endpoints() {
        for s in [0.5, 1.0, 3.0, 9.7] {
            assert!(drift_h_formula(1.0 / (s + 1.0), s).abs() < 1e-15);
            assert!((drift_h_formula(0.0, s) - 1.0 / (2.0 * s)).abs() < 1e-15);
        }
    }
}
