//! Erasure patterns over `l` channel copies.

use crate::gf2::MAX_DIM;

/// A binary erasure pattern; bit `i` set means copy `i` is erased.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ErasurePattern {
    len: usize,
    bits: u64,
}

impl ErasurePattern {
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!((1..=MAX_DIM).contains(&len), "pattern length out of range");
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        ErasurePattern {
            len,
            bits: bits & mask,
        }
    }

    /// Builds a pattern from 0/1 flags, one per copy.
    pub fn from_flags(flags: &[u8]) -> Self {
        let bits = flags
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &f)| acc | (u64::from(f != 0) << i));
        Self::from_bits(flags.len(), bits)
    }

    pub fn none(len: usize) -> Self {
        Self::from_bits(len, 0)
    }

    pub fn all(len: usize) -> Self {
        Self::from_bits(len, u64::MAX)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_erased(&self, i: usize) -> bool {
        assert!(i < self.len);
        (self.bits >> i) & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Packed mask of the non-erased positions.
    pub fn non_erased_mask(&self) -> u64 {
        let mask = if self.len == 64 {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        };
        !self.bits & mask
    }

    /// Positionwise containment: every erasure of `self` also in `other`.
    pub fn subset_of(&self, other: &ErasurePattern) -> bool {
        self.len == other.len && self.bits & !other.bits == 0
    }

    /// All `2^l` patterns of length `l`, ascending by packed bits.
    pub fn enumerate(len: usize) -> impl Iterator<Item = ErasurePattern> {
        assert!(len <= 20, "pattern enumeration guard");
        (0u64..(1u64 << len)).map(move |bits| ErasurePattern::from_bits(len, bits))
    }
}

impl std::fmt::Debug for ErasurePattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.is_erased(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_masks() {
        let e = ErasurePattern::from_flags(&[0, 0, 1, 1, 1]);
        assert_eq!(e.weight(), 3);
        assert_eq!(e.non_erased_mask(), 0b00011);
        assert!(e.is_erased(2));
        assert!(!e.is_erased(0));
    }

    #[test]
    fn subset_ordering() {
        let small = ErasurePattern::from_flags(&[1, 0, 0]);
        let big = ErasurePattern::from_flags(&[1, 0, 1]);
        assert!(small.subset_of(&big));
        assert!(!big.subset_of(&small));
        assert!(small.subset_of(&small));
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(ErasurePattern::enumerate(5).count(), 32);
        let by_weight: Vec<usize> = ErasurePattern::enumerate(4).map(|e| e.weight()).collect();
        assert_eq!(by_weight.iter().filter(|&&w| w == 2).count(), 6);
    }
}
