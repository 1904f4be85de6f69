//! Plain bit strings used for keys, extended keys and syndromes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An ordered sequence of bits.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitBlock {
    bits: Vec<bool>,
}

impl BitBlock {
    pub fn zeros(len: usize) -> Self {
        BitBlock {
            bits: vec![false; len],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitBlock { bits }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Bitwise XOR of two blocks of equal length.
    pub fn xor(&self, other: &BitBlock) -> Result<BitBlock> {
        if self.len() != other.len() {
            return Err(Error::argument(format!(
                "bit block length mismatch: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(BitBlock {
            bits: self.iter().zip(other.iter()).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// Number of positions where the two blocks differ.
    pub fn hamming_distance(&self, other: &BitBlock) -> Result<usize> {
        Ok(self.xor(other)?.weight())
    }
}

impl From<Vec<bool>> for BitBlock {
    fn from(bits: Vec<bool>) -> Self {
        BitBlock { bits }
    }
}

impl FromIterator<bool> for BitBlock {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitBlock {
            bits: iter.into_iter().collect(),
        }
    }
}

/// Parses a string of `0`/`1` characters; ASCII whitespace is ignored.
impl FromStr for BitBlock {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_ascii_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::argument(format!("invalid bit character {other:?}"))),
            })
            .collect()
    }
}

impl fmt::Display for BitBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitBlock({self})")
    }
}

/// Relative syndrome: bitwise XOR of the two parties' syndromes.
pub fn relative_syndrome(s_a: &BitBlock, s_b: &BitBlock) -> Result<BitBlock> {
    s_a.xor(s_b)
}
