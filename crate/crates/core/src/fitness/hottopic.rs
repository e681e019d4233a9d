//! HotTopic functions (Lengler and Steger).
//!
//! An instance draws `L` sets `A_i` of size `round(alpha n)` uniformly at
//! random, and inside each a subset `B_i` of size `round(beta n)`. The level
//! `l(x)` is the largest `i` such that `x` has at least `(1 - eps)|B_i|`
//! one-bits in `B_i` (0 if there is none). Then
//!
//! ```text
//! HT(x) = l(x) n^2 + n * |x restricted to A_{l+1}|_1 + |x outside A_{l+1}|_1
//! ```
//!
//! with `A_{L+1}` empty. Values fit in a `u64` for every practical `n`.

use std::fmt;

use crate::bits::{sample_distinct, BitString};
use crate::rng::RngHandle;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HotTopicParams {
    pub levels: usize,
    pub alpha: f64,
    pub beta: f64,
    pub eps: f64,
}

impl Default for HotTopicParams {
    fn default() -> Self {
        Self {
            levels: 100,
            alpha: 0.25,
            beta: 0.05,
            eps: 0.05,
        }
    }
}

impl fmt::Display for HotTopicParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}/{}", self.levels, self.alpha, self.beta, self.eps)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct HotTopic {
    n: usize,
    /// Per position: `(set index, also in B)` for every `A_i` containing it.
    membership: Vec<Vec<(u32, bool)>>,
    a_size: Vec<usize>,
    b_threshold: Vec<usize>,
    /// Cached counts for the parent installed by the last epoch.
    parent_a_ones: Vec<usize>,
    parent_b_ones: Vec<usize>,
    parent_ones: usize,
}

impl HotTopic {
    pub(crate) fn sample(params: HotTopicParams, n: usize, rng: &mut RngHandle) -> Self {
        let a_len = ((params.alpha * n as f64).round() as usize).clamp(1, n);
        let b_len = ((params.beta * n as f64).round() as usize).clamp(1, a_len);
        let threshold = ((1.0 - params.eps) * b_len as f64).ceil() as usize;
        let mut membership = vec![Vec::new(); n];
        let mut a = Vec::with_capacity(a_len);
        let mut b_idx = Vec::with_capacity(b_len);
        for set in 0..params.levels {
            a.clear();
            b_idx.clear();
            sample_distinct(n as u32, a_len, rng, &mut a);
            sample_distinct(a_len as u32, b_len, rng, &mut b_idx);
            let mut in_b = vec![false; a_len];
            for &j in &b_idx {
                in_b[j as usize] = true;
            }
            for (j, &pos) in a.iter().enumerate() {
                membership[pos as usize].push((set as u32, in_b[j]));
            }
        }
        let levels = params.levels;
        Self {
            n,
            membership,
            a_size: vec![a_len; levels],
            b_threshold: vec![threshold; levels],
            parent_a_ones: vec![0; levels],
            parent_b_ones: vec![0; levels],
            parent_ones: 0,
        }
    }

    fn counts(&self, x: &BitString, a: &mut [usize], b: &mut [usize]) {
        a.iter_mut().for_each(|c| *c = 0);
        b.iter_mut().for_each(|c| *c = 0);
        for (pos, sets) in self.membership.iter().enumerate() {
            if x.get(pos) {
                for &(i, in_b) in sets {
                    a[i as usize] += 1;
                    if in_b {
                        b[i as usize] += 1;
                    }
                }
            }
        }
    }

    fn value_from_counts(&self, a: &[usize], b: &[usize], ones: usize) -> u64 {
        let level = (0..b.len()).rev().find(|&i| b[i] >= self.b_threshold[i]).map_or(0, |i| i + 1);
        let n = self.n as u64;
        let (inside, size) = if level < a.len() { (a[level], self.a_size[level]) } else { (0, 0) };
        debug_assert!(inside <= size);
        let outside = ones - inside;
        level as u64 * n * n + inside as u64 * n + outside as u64
    }

    pub(crate) fn value(&self, x: &BitString) -> u64 {
        let levels = self.a_size.len();
        let (mut a, mut b) = (vec![0; levels], vec![0; levels]);
        self.counts(x, &mut a, &mut b);
        self.value_from_counts(&a, &b, x.ones())
    }

    pub(crate) fn install_parent(&mut self, parent: &BitString) {
        let mut a = std::mem::take(&mut self.parent_a_ones);
        let mut b = std::mem::take(&mut self.parent_b_ones);
        self.counts(parent, &mut a, &mut b);
        self.parent_a_ones = a;
        self.parent_b_ones = b;
        self.parent_ones = parent.ones();
    }

    /// Value of `parent` with `flips` applied, using the installed parent counts.
    pub(crate) fn value_with_flips(&self, parent: &BitString, flips: &[u32]) -> u64 {
        let mut a = self.parent_a_ones.clone();
        let mut b = self.parent_b_ones.clone();
        let mut ones = self.parent_ones as isize;
        for &p in flips {
            let gained = !parent.get(p as usize);
            ones += if gained { 1 } else { -1 };
            for &(i, in_b) in &self.membership[p as usize] {
                let i = i as usize;
                if gained {
                    a[i] += 1;
                    if in_b {
                        b[i] += 1;
                    }
                } else {
                    a[i] -= 1;
                    if in_b {
                        b[i] -= 1;
                    }
                }
            }
        }
        self.value_from_counts(&a, &b, ones as usize)
    }
}
