//! Bit strings and standard bit mutation.
//!
//! Mutation draws the number of flipped bits `K ~ Bin(n, c/n)` by inverse
//! transform on a precomputed CDF (one `unit_f64` draw), then picks `K`
//! distinct positions with Floyd's algorithm (exactly `K` `below_u32` draws).
//! The resulting offspring is distributed exactly as if each bit had been
//! flipped independently with probability `c/n`; the two-stage schedule is
//! what fixes the RNG consumption order.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rng::RngHandle;

#[derive(Debug, Error, PartialEq)]
pub enum BitsError {
    #[error("bit string must have positive length")]
    Empty,
    #[error("invalid character {0:?} in bit string (expected '0' or '1')")]
    BadChar(char),
    #[error("mutation rate c/n = {rate} outside [0, 1]")]
    BadRate { rate: f64 },
    #[error("cannot place {zeros} zero-bits in a string of length {n}")]
    TooManyZeros { zeros: usize, n: usize },
}

/// Fixed-length bit vector with a maintained zero-bit count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    n: usize,
    zeros: usize,
}

impl BitString {
    pub fn all_zeros(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(64)],
            n,
            zeros: n,
        }
    }

    pub fn all_ones(n: usize) -> Self {
        let mut s = Self::all_zeros(n);
        for i in 0..n {
            s.set(i, true);
        }
        s
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = Self::all_zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            s.set(i, b);
        }
        s
    }

    /// A string with exactly `zeros` zero-bits at uniformly random positions.
    pub fn random_with_zeros(n: usize, zeros: usize, rng: &mut RngHandle) -> Result<Self, BitsError> {
        if zeros > n {
            return Err(BitsError::TooManyZeros { zeros, n });
        }
        let mut s = Self::all_ones(n);
        let mut picked = Vec::with_capacity(zeros);
        sample_distinct(n as u32, zeros, rng, &mut picked);
        for p in picked {
            s.set(p as usize, false);
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        if self.get(i) != value {
            self.flip(i);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.n);
        let mask = 1u64 << (i & 63);
        let w = &mut self.words[i >> 6];
        if *w & mask == 0 {
            self.zeros -= 1;
        } else {
            self.zeros += 1;
        }
        *w ^= mask;
    }

    /// Number of zero-bits, `Z(x)`.
    #[inline]
    pub fn zeros(&self) -> usize {
        self.zeros
    }

    /// Number of one-bits, `OM(x)`.
    #[inline]
    pub fn ones(&self) -> usize {
        self.n - self.zeros
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }

    /// Ones among positions `range`.
    pub fn count_ones_in(&self, range: std::ops::Range<usize>) -> usize {
        range.filter(|&i| self.get(i)).count()
    }

    pub(crate) fn apply_flips(&mut self, flips: &[u32]) {
        for &p in flips {
            self.flip(p as usize);
        }
    }

    /// Recount zero-bits from the packed words. Used to check the cache.
    pub fn recount_zeros(&self) -> usize {
        let ones: usize = self.words.iter().map(|w| w.count_ones() as usize).sum();
        self.n - ones
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = BitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(BitsError::BadChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if bits.is_empty() {
            return Err(BitsError::Empty);
        }
        Ok(Self::from_bits(&bits))
    }
}

/// `Z(x)`: the number of zero-bits.
pub fn zeromax(x: &BitString) -> usize {
    x.zeros()
}

/// `OM(x)`: the number of one-bits.
pub fn onemax(x: &BitString) -> usize {
    x.ones()
}

/// Per-bit flip probability `c/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutationParams {
    pub c: f64,
    pub n: usize,
}

impl MutationParams {
    pub fn new(c: f64, n: usize) -> Result<Self, BitsError> {
        let m = Self { c, n };
        m.validate()?;
        Ok(m)
    }

    pub fn standard(n: usize) -> Self {
        Self { c: 1.0, n }
    }

    pub fn rate(&self) -> f64 {
        self.c / self.n as f64
    }

    pub fn validate(&self) -> Result<(), BitsError> {
        if self.n == 0 {
            return Err(BitsError::Empty);
        }
        let rate = self.rate();
        if !(0.0..=1.0).contains(&rate) || rate.is_nan() {
            return Err(BitsError::BadRate { rate });
        }
        Ok(())
    }
}

/// Samples flip sets for standard bit mutation. Build once per run.
#[derive(Debug, Clone)]
pub struct Mutator {
    n: u32,
    /// `cdf[k] = P[K <= k]`; the last entry is forced to 1.
    cdf: Vec<f64>,
}

impl Mutator {
    pub fn new(params: MutationParams) -> Result<Self, BitsError> {
        params.validate()?;
        let n = params.n;
        let p = params.rate();
        let cdf = if p == 0.0 {
            vec![1.0]
        } else if p == 1.0 {
            let mut v = vec![0.0; n + 1];
            v[n] = 1.0;
            v
        } else {
            let log_ratio = p.ln() - (-p).ln_1p();
            let mut log_pmf = n as f64 * (-p).ln_1p();
            let mut acc = 0.0;
            let mut v = Vec::new();
            let mean = n as f64 * p;
            for k in 0..=n {
                acc += log_pmf.exp();
                v.push(acc.min(1.0));
                if k as f64 > mean && 1.0 - acc < f64::EPSILON / 4.0 {
                    break;
                }
                log_pmf += ((n - k) as f64).ln() - ((k + 1) as f64).ln() + log_ratio;
            }
            *v.last_mut().expect("non-empty") = 1.0;
            v
        };
        Ok(Self { n: n as u32, cdf })
    }

    pub fn dimension(&self) -> usize {
        self.n as usize
    }

    /// Draws a flip set into `out` (cleared first). Positions are distinct.
    #[inline]
    pub fn sample_flips(&self, rng: &mut RngHandle, out: &mut Vec<u32>) {
        out.clear();
        let u = rng.unit_f64();
        let mut k = 0;
        while self.cdf[k] <= u {
            k += 1;
        }
        sample_distinct(self.n, k, rng, out);
    }

    /// Mutated copy of `x`; `x` is untouched.
    pub fn mutate(&self, x: &BitString, rng: &mut RngHandle) -> BitString {
        let mut flips = Vec::new();
        self.sample_flips(rng, &mut flips);
        let mut y = x.clone();
        y.apply_flips(&flips);
        y
    }
}

/// One-shot standard bit mutation.
pub fn mutate(x: &BitString, m: MutationParams, rng: &mut RngHandle) -> Result<BitString, BitsError> {
    Ok(Mutator::new(m)?.mutate(x, rng))
}

/// Floyd's algorithm: `k` distinct values from `0..n`, appended to `out`.
pub(crate) fn sample_distinct(n: u32, k: usize, rng: &mut RngHandle, out: &mut Vec<u32>) {
    debug_assert!(k <= n as usize);
    let start = out.len();
    if k <= 32 {
        for j in (n - k as u32)..n {
            let t = rng.below_u32(j + 1);
            if out[start..].contains(&t) {
                out.push(j);
            } else {
                out.push(t);
            }
        }
    } else {
        let mut seen = vec![false; n as usize];
        for j in (n - k as u32)..n {
            let t = rng.below_u32(j + 1);
            let v = if seen[t as usize] { j } else { t };
            seen[v as usize] = true;
            out.push(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeromax_examples() {
        assert_eq!(zeromax(&BitString::all_ones(5)), 0);
        assert_eq!(zeromax(&BitString::all_zeros(5)), 5);
        let x: BitString = "101".parse().unwrap();
        assert_eq!(zeromax(&x), 1);
        assert_eq!(onemax(&x) + zeromax(&x), 3);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!("10a".parse::<BitString>(), Err(BitsError::BadChar('a')));
        assert_eq!("".parse::<BitString>(), Err(BitsError::Empty));
    }

    #[test]
    fn zero_rate_is_identity() {
        let x: BitString = "1100101".parse().unwrap();
        let mut rng = RngHandle::new(9, 0);
        for _ in 0..100 {
            let y = mutate(&x, MutationParams { c: 0.0, n: 7 }, &mut rng).unwrap();
            assert_eq!(y, x);
        }
    }

    #[test]
    fn certain_flip_complements() {
        let x: BitString = "0".parse().unwrap();
        let mut rng = RngHandle::new(9, 0);
        let y = mutate(&x, MutationParams::standard(1), &mut rng).unwrap();
        assert_eq!(y.to_string(), "1");
        assert_eq!(x.to_string(), "0");
    }

    #[test]
    fn rate_above_one_is_rejected() {
        assert!(MutationParams::new(3.0, 2).is_err());
    }

    #[test]
    fn cached_zeros_follow_flips() {
        let mut x = BitString::all_zeros(130);
        for i in (0..130).step_by(3) {
            x.flip(i);
        }
        assert_eq!(x.zeros(), x.recount_zeros());
        x.set(0, false);
        x.set(1, true);
        assert_eq!(x.zeros(), x.recount_zeros());
    }

    #[test]
    fn random_with_zeros_exact_count() {
        let mut rng = RngHandle::new(5, 5);
        for z in [0, 1, 17, 40, 100] {
            let x = BitString::random_with_zeros(100, z, &mut rng).unwrap();
            assert_eq!(x.zeros(), z);
            assert_eq!(x.recount_zeros(), z);
        }
        assert!(BitString::random_with_zeros(3, 4, &mut rng).is_err());
    }

    #[test]
    fn floyd_yields_distinct_positions() {
        let mut rng = RngHandle::new(1, 2);
        for k in [0usize, 1, 5, 32, 33, 64, 100] {
            let mut out = Vec::new();
            sample_distinct(100, k, &mut rng, &mut out);
            let mut sorted = out.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), k);
            assert!(out.iter().all(|&p| p < 100));
        }
    }
}
