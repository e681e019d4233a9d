//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library: probabilities are exact rationals obtained by
//! enumerating every flip mask, every weight permutation and every tie draw.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::Ratio;

pub type Q = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q {
    Ratio::new(n, d)
}

pub fn to_f64(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    OneMax,
    /// Uniformly random weight ranks, resampled every generation.
    DynBinVal,
}

/// Probability of one particular flip mask with `k` flipped bits at rate `1/n`.
pub fn mask_prob(n: usize, k: usize) -> Q {
    let n = n as i128;
    let mut p = q(1, 1);
    for _ in 0..k {
        p *= q(1, n);
    }
    for _ in k..n as usize {
        p *= q(n - 1, n);
    }
    p
}

/// All `n!` rank vectors: `rank[p]` is the exponent of position `p`'s weight.
pub fn all_ranks(n: usize) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, n: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for r in 0..n as u32 {
            if !prefix.contains(&r) {
                prefix.push(r);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

pub fn apply_mask(x: &[bool], mask: u32) -> Vec<bool> {
    x.iter().enumerate().map(|(i, &b)| b ^ (mask >> i & 1 == 1)).collect()
}

pub fn ones(x: &[bool]) -> usize {
    x.iter().filter(|&&b| b).count()
}

/// `sum_p x_p 2^rank[p]` (fits easily for the tiny `n` used here).
pub fn ranked_value(x: &[bool], rank: &[u32]) -> u64 {
    x.iter().zip(rank).filter(|(&b, _)| b).map(|(_, &r)| 1u64 << r).sum()
}

/// Exact distribution of `Z^t - Z^{t+1}` for one generation of comma
/// selection with `lambda` offspring from parent `x`: enumerate every tuple of
/// masks, every epoch permutation (for DBv) and share each tie uniformly.
pub fn step_distribution(kind: OracleKind, x: &[bool], lambda: usize) -> BTreeMap<i64, Q> {
    let n = x.len();
    let masks = 1u32 << n;
    let ranks = match kind {
        OracleKind::OneMax => vec![(0..n as u32).collect()],
        OracleKind::DynBinVal => all_ranks(n),
    };
    let perm_weight = q(1, ranks.len() as i128);
    let base = ones(x) as i64;
    let mut dist: BTreeMap<i64, Q> = BTreeMap::new();
    let tuples = (masks as u64).pow(lambda as u32);
    for code in 0..tuples {
        let mut c = code;
        let mut offspring = Vec::with_capacity(lambda);
        let mut p = q(1, 1);
        for _ in 0..lambda {
            let m = (c % masks as u64) as u32;
            c /= masks as u64;
            p *= mask_prob(n, m.count_ones() as usize);
            offspring.push(apply_mask(x, m));
        }
        for rank in &ranks {
            let value = |y: &[bool]| match kind {
                OracleKind::OneMax => ones(y) as u64,
                OracleKind::DynBinVal => ranked_value(y, rank),
            };
            let best = offspring.iter().map(|y| value(y)).max().unwrap();
            let maximizers: Vec<&Vec<bool>> = offspring.iter().filter(|y| value(y) == best).collect();
            let share = p * perm_weight * q(1, maximizers.len() as i128);
            for y in maximizers {
                *dist.entry(ones(y) as i64 - base).or_insert(q(0, 1)) += share;
            }
        }
    }
    dist
}

/// Single-offspring probability of strictly beating `x` (fresh epoch).
pub fn pimp(kind: OracleKind, x: &[bool]) -> Q {
    let n = x.len();
    let ranks = match kind {
        OracleKind::OneMax => vec![(0..n as u32).collect()],
        OracleKind::DynBinVal => all_ranks(n),
    };
    let perm_weight = q(1, ranks.len() as i128);
    let mut total = q(0, 1);
    for m in 0..1u32 << n {
        let y = apply_mask(x, m);
        let pm = mask_prob(n, m.count_ones() as usize);
        for rank in &ranks {
            let better = match kind {
                OracleKind::OneMax => ones(&y) > ones(x),
                OracleKind::DynBinVal => ranked_value(&y, rank) > ranked_value(x, rank),
            };
            if better {
                total += pm * perm_weight;
            }
        }
    }
    total
}

/// `Δ_{>=i}` of an exact step distribution.
pub fn delta_ge(d: &BTreeMap<i64, Q>, i: i64) -> Q {
    d.iter()
        .filter(|(&k, _)| k >= i)
        .fold(q(0, 1), |acc, (&k, p)| acc + *p * q(k as i128, 1))
}

/// `Δ_{<=i}` of an exact step distribution.
pub fn delta_le(d: &BTreeMap<i64, Q>, i: i64) -> Q {
    d.iter()
        .filter(|(&k, _)| k <= i)
        .fold(q(0, 1), |acc, (&k, p)| acc + *p * q(k as i128, 1))
}

/// Parent with zeros in the first `z` positions.
pub fn parent_with_zeros(n: usize, z: usize) -> Vec<bool> {
    (0..n).map(|i| i >= z).collect()
}

/// `sum_i 2^i x_{mapping[i]}` as an arbitrary-precision integer.
pub fn big_binval(x: &[bool], mapping: &[u32]) -> BigUint {
    let mut v = BigUint::from(0u32);
    for (i, &p) in mapping.iter().enumerate() {
        if x[p as usize] {
            v += BigUint::from(1u32) << i;
        }
    }
    v
}

/// `n * (ones in the first floor(n/2) positions) + (ones in the rest)`.
pub fn big_binary(x: &[bool]) -> BigUint {
    let n = x.len();
    let half = n / 2;
    let first = x[..half].iter().filter(|&&b| b).count();
    let rest = x[half..].iter().filter(|&&b| b).count();
    BigUint::from(n) * BigUint::from(first) + BigUint::from(rest)
}

/// `qimp(p, λ)` for `(p, λ)` with the reference evaluated at 60 significant
/// digits from the exact binary values of `p` and `λ`, then rounded to 20.
#[allow(clippy::excessive_precision)]
pub const QIMP_REFERENCE: &[(f64, f64, f64)] = &[
    (1e-09, 1.0, 1.0000000000000000623e-9),
    (1e-09, 2.5, 2.499999998125000156e-9),
    (1e-09, 8.0, 7.9999999720000005543e-9),
    (1e-09, 100.0, 9.9999995050000167928e-8),
    (1e-09, 12345.678, 1.2345601798603735299e-5),
    (1e-09, 1000000.0, 9.9950016712450864441e-4),
    (3.7e-07, 1.0, 3.7000000000000000443e-7),
    (3.7e-07, 2.5, 9.2499974331251584014e-7),
    (3.7e-07, 8.0, 2.9599961668028366021e-6),
    (3.7e-07, 100.0, 3.6999322353190517054e-5),
    (3.7e-07, 12345.678, 4.5574847093749883814e-3),
    (3.7e-07, 1000000.0, 3.0926571664342032004e-1),
    (1e-05, 1.0, 1.0000000000000000818e-5),
    (1e-05, 2.5, 2.4999812500312502436e-5),
    (1e-05, 8.0, 7.9997200055999306549e-5),
    (1e-05, 100.0, 9.9950516166079535928e-4),
    (1e-05, 12345.678, 1.1614070475501820192e-1),
    (1e-05, 1000000.0, 9.9995460234019238701e-1),
    (0.0001, 1.0, 1.0000000000000000479e-4),
    (0.0001, 2.5, 2.4998125031250391835e-4),
    (0.0001, 8.0, 7.9972005599300059828e-4),
    (0.0001, 100.0, 9.950661308629185221e-3),
    (0.0001, 12345.678, 7.0905747284598794684e-1),
    (0.0001, 1000000.0, 1.0),
    (0.003, 1.0, 3.0000000000000000625e-3),
    (0.003, 2.5, 7.4831334406669138766e-3),
    (0.003, 8.0, 2.3749506343587605979e-2),
    (0.003, 100.0, 2.5951574046021721414e-1),
    (0.003, 12345.678, 9.9999999999999992222e-1),
    (0.003, 1000000.0, 1.0),
    (0.01, 1.0, 1.0000000000000000208e-2),
    (0.01, 2.5, 2.4812812891801782877e-2),
    (0.01, 8.0, 7.7255305572079901552e-2),
    (0.01, 100.0, 6.3396765872677050277e-1),
    (0.01, 12345.678, 1.0),
    (0.01, 1000000.0, 1.0),
    (0.123, 1.0, 1.2299999999999999822e-1),
    (0.123, 2.5, 2.797239347665667398e-1),
    (0.123, 8.0, 6.5005745421712209604e-1),
    (0.123, 100.0, 9.9999800492449455024e-1),
    (0.123, 12345.678, 1.0),
    (0.123, 1000000.0, 1.0),
    (0.37, 1.0, 3.6999999999999999556e-1),
    (0.37, 2.5, 6.8497039139153919284e-1),
    (0.37, 8.0, 9.751844219732478986e-1),
    (0.37, 100.0, 9.9999999999999999999e-1),
    (0.37, 12345.678, 1.0),
    (0.37, 1000000.0, 1.0),
    (0.5, 1.0, 5.0e-1),
    (0.5, 2.5, 8.232233047033631189e-1),
    (0.5, 8.0, 9.9609375e-1),
    (0.5, 100.0, 1.0),
    (0.5, 12345.678, 1.0),
    (0.5, 1000000.0, 1.0),
];

/// `P[Bin(k, 1/2) = j] * 2^k` etc. are easy; this is the general exact pmf
/// `C(k, j) r^j (1-r)^(k-j)` for a rational rate, used for tiny tables.
pub fn binomial_pmf(k: u32, j: u32, rate: Q) -> Q {
    let mut c = 1i128;
    for i in 0..j as i128 {
        c = c * (k as i128 - i) / (i + 1);
    }
    let mut p = q(c, 1);
    for _ in 0..j {
        p *= rate;
    }
    for _ in j..k {
        p *= q(1, 1) - rate;
    }
    p
}
