//! Static and dynamic monotone benchmark functions behind a comparator.
//!
//! Fitness values of the binary-value family reach `2^(n-1)`, so nothing here
//! materializes them. Every kind answers "which of two strings is fitter in
//! the current epoch" by scanning bits:
//!
//! * **OneMax** compares one-counts.
//! * **BinVal family** (BinVal, Dynamic BinVal, adversarial Dynamic BinVal)
//!   assigns each position a weight rank; the string owning the 1 at the
//!   heaviest differing position wins. For BinVal, 0-based position `p`
//!   carries weight `2^p`. For Dynamic BinVal the ranks are a fresh uniform
//!   permutation per epoch (see [`DynamicFitness::begin_epoch`]).
//! * **Binary** is `n * (ones in the first floor(n/2) positions) + (ones in the rest)`.
//! * **HotTopic** is evaluated as a `u64`.
//!
//! Dynamic Binval epochs are keyed: `begin_epoch` draws one 64-bit seed and
//! position `p` gets the key `mix64(seed + (p + 1) * GAMMA)` (the `p`-th
//! SplitMix64 output), with ties broken by position. Sorting positions by key
//! gives the epoch's permutation; comparisons only ever look at the keys of
//! the positions they touch, so an epoch costs O(1).

mod hottopic;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use crate::bits::onemax;
use crate::bits::BitString;
use crate::permutation::Permutation;
use crate::rng::{mix64, RngHandle, GOLDEN_GAMMA};
use hottopic::HotTopic;
pub use hottopic::HotTopicParams;

#[derive(Debug, Error, PartialEq)]
pub enum FitnessError {
    #[error("dimension mismatch: function has n = {expected}, got strings of length {a} and {b}")]
    DimensionMismatch { expected: usize, a: usize, b: usize },
    #[error("unknown function kind {0:?}")]
    UnknownKind(String),
    #[error("bad HotTopic parameters {0:?} (expected L/alpha/beta/eps)")]
    BadHotTopic(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionKind {
    OneMax,
    BinVal,
    Binary,
    DynamicBinVal,
    /// Dynamic BinVal whose epoch permutation ranks every parent 0-bit above every parent 1-bit.
    AdversarialDynBinVal,
    HotTopic(HotTopicParams),
}

impl FunctionKind {
    /// Kinds that draw a new function each generation and so re-evaluate the parent.
    pub fn is_dynamic(&self) -> bool {
        matches!(self, Self::DynamicBinVal | Self::AdversarialDynBinVal)
    }

    pub fn id(&self) -> &'static str {
        match self {
            Self::OneMax => "onemax",
            Self::BinVal => "binval",
            Self::Binary => "binary",
            Self::DynamicBinVal => "dynbinval",
            Self::AdversarialDynBinVal => "adv-dynbinval",
            Self::HotTopic(_) => "hottopic",
        }
    }

    /// The kinds compared in the improvement-probability and runtime figures.
    pub fn standard_set() -> [FunctionKind; 4] {
        [Self::OneMax, Self::BinVal, Self::Binary, Self::DynamicBinVal]
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::HotTopic(p) if *p != HotTopicParams::default() => write!(f, "hottopic:{p}"),
            other => f.write_str(other.id()),
        }
    }
}

impl FromStr for FunctionKind {
    type Err = FitnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (head, args) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let kind = match head.to_ascii_lowercase().as_str() {
            "onemax" | "om" => Self::OneMax,
            "binval" | "bv" => Self::BinVal,
            "binary" => Self::Binary,
            "dynbinval" | "dynamic-binval" | "dbv" => Self::DynamicBinVal,
            "adv-dynbinval" | "adversarial-dynbinval" => Self::AdversarialDynBinVal,
            "hottopic" | "ht" => {
                let params = match args {
                    None => HotTopicParams::default(),
                    Some(a) => parse_hottopic(a).ok_or_else(|| FitnessError::BadHotTopic(a.to_string()))?,
                };
                return Ok(Self::HotTopic(params));
            }
            _ => return Err(FitnessError::UnknownKind(s.to_string())),
        };
        if args.is_some() {
            return Err(FitnessError::UnknownKind(s.to_string()));
        }
        Ok(kind)
    }
}

fn parse_hottopic(args: &str) -> Option<HotTopicParams> {
    let parts: Vec<&str> = args.split([',', '/']).map(str::trim).collect();
    if parts.len() != 4 {
        return None;
    }
    let p = HotTopicParams {
        levels: parts[0].parse().ok()?,
        alpha: parts[1].parse().ok()?,
        beta: parts[2].parse().ok()?,
        eps: parts[3].parse().ok()?,
    };
    let ok = p.levels >= 1 && p.alpha > 0.0 && p.alpha < 1.0 && p.beta > 0.0 && p.beta <= p.alpha && (0.0..1.0).contains(&p.eps);
    ok.then_some(p)
}

#[derive(Debug, Clone)]
enum Epoch {
    Static,
    Keyed { seed: u64 },
    Adversarial { seed: u64, parent: BitString },
    HotTopic(Box<HotTopic>),
}

/// A (possibly dynamic) monotone function together with its current epoch.
#[derive(Debug, Clone)]
pub struct DynamicFitness {
    kind: FunctionKind,
    n: usize,
    epoch: Epoch,
}

impl DynamicFitness {
    /// `rng` is only consumed when the kind needs a random instance (HotTopic).
    pub fn new(kind: FunctionKind, n: usize, rng: &mut RngHandle) -> Self {
        let epoch = match kind {
            FunctionKind::OneMax | FunctionKind::BinVal | FunctionKind::Binary => Epoch::Static,
            FunctionKind::DynamicBinVal => Epoch::Keyed { seed: 0 },
            FunctionKind::AdversarialDynBinVal => Epoch::Adversarial {
                seed: 0,
                parent: BitString::all_ones(n),
            },
            FunctionKind::HotTopic(p) => Epoch::HotTopic(Box::new(HotTopic::sample(p, n, rng))),
        };
        Self { kind, n, epoch }
    }

    /// Convenience for kinds that need no randomness at construction.
    pub fn deterministic(kind: FunctionKind, n: usize) -> Self {
        debug_assert!(!matches!(kind, FunctionKind::HotTopic(_)));
        Self::new(kind, n, &mut RngHandle::new(0, u64::MAX))
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Installs the function for the next generation. Dynamic BinVal draws one
    /// word from `rng`; the adversarial variant draws one word and remembers
    /// `parent`; static kinds draw nothing.
    pub fn begin_epoch(&mut self, parent: &BitString, rng: &mut RngHandle) {
        match &mut self.epoch {
            Epoch::Static => {}
            Epoch::Keyed { seed } => *seed = rng.word(),
            Epoch::Adversarial { seed, parent: p } => {
                *seed = rng.word();
                p.clone_from(parent);
            }
            Epoch::HotTopic(ht) => ht.install_parent(parent),
        }
    }

    /// Sort key for the weight of position `p`; larger means heavier.
    #[inline]
    fn weight_key(&self, p: u32) -> (u64, u32) {
        match &self.epoch {
            Epoch::Keyed { seed } => (mix64(seed.wrapping_add((p as u64 + 1).wrapping_mul(GOLDEN_GAMMA))), p),
            Epoch::Adversarial { seed, parent } => {
                let k = mix64(seed.wrapping_add((p as u64 + 1).wrapping_mul(GOLDEN_GAMMA))) >> 1;
                let zero = (!parent.get(p as usize)) as u64;
                ((zero << 63) | k, p)
            }
            _ => (p as u64, p),
        }
    }

    /// The epoch's weight permutation for the BinVal family: `mapping[i]` is
    /// the position carrying weight `2^i`. `None` for other kinds.
    pub fn permutation(&self) -> Option<Permutation> {
        match self.kind {
            FunctionKind::BinVal | FunctionKind::DynamicBinVal | FunctionKind::AdversarialDynBinVal => {
                let mut positions: Vec<u32> = (0..self.n as u32).collect();
                positions.sort_by_key(|&p| self.weight_key(p));
                Some(Permutation::from_mapping(positions).expect("sorted positions form a bijection"))
            }
            _ => None,
        }
    }

    /// Compares `a` against `b` under the current epoch.
    pub fn compare(&self, a: &BitString, b: &BitString) -> Result<Ordering, FitnessError> {
        if a.len() != self.n || b.len() != self.n {
            return Err(FitnessError::DimensionMismatch {
                expected: self.n,
                a: a.len(),
                b: b.len(),
            });
        }
        Ok(match (&self.kind, &self.epoch) {
            (FunctionKind::OneMax, _) => a.ones().cmp(&b.ones()),
            (FunctionKind::Binary, _) => binary_value(a).cmp(&binary_value(b)),
            (FunctionKind::HotTopic(_), Epoch::HotTopic(ht)) => ht.value(a).cmp(&ht.value(b)),
            _ => {
                let mut best: Option<((u64, u32), bool)> = None;
                for p in 0..self.n {
                    let (ba, bb) = (a.get(p), b.get(p));
                    if ba != bb {
                        let key = self.weight_key(p as u32);
                        if best.is_none_or(|(k, _)| key > k) {
                            best = Some((key, ba));
                        }
                    }
                }
                match best {
                    None => Ordering::Equal,
                    Some((_, true)) => Ordering::Greater,
                    Some((_, false)) => Ordering::Less,
                }
            }
        })
    }

    /// Compares two offspring of `parent` given by their flip sets (an empty
    /// set is the parent itself). Flip sets must hold distinct positions.
    /// `parent` must be the one installed by the last `begin_epoch` for the
    /// kinds that cache it (HotTopic, adversarial Dynamic BinVal).
    #[inline]
    pub fn compare_flips(&self, parent: &BitString, a: &[u32], b: &[u32]) -> Ordering {
        match (&self.kind, &self.epoch) {
            (FunctionKind::OneMax, _) => onemax_delta(parent, a).cmp(&onemax_delta(parent, b)),
            (FunctionKind::Binary, _) => {
                let half = self.n / 2;
                binary_delta(parent, a, half, self.n).cmp(&binary_delta(parent, b, half, self.n))
            }
            (FunctionKind::HotTopic(_), Epoch::HotTopic(ht)) => ht.value_with_flips(parent, a).cmp(&ht.value_with_flips(parent, b)),
            _ => {
                // Heaviest position flipped by exactly one of the two offspring decides.
                let mut best: Option<((u64, u32), Ordering)> = None;
                let mut consider = |p: u32, owner_is_a: bool| {
                    let key = self.weight_key(p);
                    if best.is_none_or(|(k, _)| key > k) {
                        let owner_gains = !parent.get(p as usize);
                        let ord = if owner_gains == owner_is_a {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                        best = Some((key, ord));
                    }
                };
                for &p in a {
                    if !b.contains(&p) {
                        consider(p, true);
                    }
                }
                for &p in b {
                    if !a.contains(&p) {
                        consider(p, false);
                    }
                }
                best.map_or(Ordering::Equal, |(_, o)| o)
            }
        }
    }
}

#[inline]
fn onemax_delta(parent: &BitString, flips: &[u32]) -> i64 {
    flips.iter().map(|&p| if parent.get(p as usize) { -1 } else { 1 }).sum()
}

#[inline]
fn binary_delta(parent: &BitString, flips: &[u32], half: usize, n: usize) -> i64 {
    flips
        .iter()
        .map(|&p| {
            let w = if (p as usize) < half { n as i64 } else { 1 };
            if parent.get(p as usize) {
                -w
            } else {
                w
            }
        })
        .sum()
}

/// `Binary(x) = n * sum_{i <= floor(n/2)} x_i + sum_{i > floor(n/2)} x_i`.
pub fn binary_value(x: &BitString) -> u64 {
    let n = x.len();
    let half = n / 2;
    (x.count_ones_in(0..half) * n + x.count_ones_in(half..n)) as u64
}
