use thiserror::Error;

use crate::rng::RngHandle;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("mapping is not a bijection on 0..{0}")]
pub struct NotABijection(pub usize);

/// A bijection on `0..n`, stored 0-based: `mapping[i]` is the image of `i`.
///
/// When used as a weight assignment, `mapping[i]` is the bit position that
/// carries weight `2^i` (the 1-based `pi(i+1) - 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n as u32).collect(),
        }
    }

    pub fn from_mapping(mapping: Vec<u32>) -> Result<Self, NotABijection> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            let m = m as usize;
            if m >= n || seen[m] {
                return Err(NotABijection(n));
            }
            seen[m] = true;
        }
        Ok(Self { mapping })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i] as usize
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.mapping.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m as usize] = i as u32;
        }
        Self { mapping: inv }
    }
}

/// Uniformly random permutation of `0..n` by Fisher-Yates.
pub fn sample_permutation(n: usize, rng: &mut RngHandle) -> Permutation {
    let mut mapping: Vec<u32> = (0..n as u32).collect();
    rng.shuffle(&mut mapping);
    Permutation { mapping }
}
