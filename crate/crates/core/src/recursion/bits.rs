use core::fmt;

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite 0/1 string with its weight (number of ones) cached.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString {
    bits: Vec<bool>,
    weight: usize,
}

impl BitString {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        let weight = bits.iter().filter(|&&b| b).count();
        BitString { bits, weight }
    }

    pub fn zeros(n: usize) -> Self {
        BitString { bits: alloc::vec![false; n], weight: 0 }
    }

    /// `1^ones 0^zeros`
    pub fn ones_then_zeros(ones: usize, zeros: usize) -> Self {
        let mut bits = alloc::vec![true; ones];
        bits.resize(ones + zeros, false);
        BitString { bits, weight: ones }
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidInput(alloc::format!("bad bit {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn last(&self) -> Option<bool> {
        self.bits.last().copied()
    }

    pub fn is_all_zeros(&self) -> bool {
        self.weight == 0
    }

    /// Number of trailing zeros.
    pub fn trailing_zeros(&self) -> usize {
        self.bits.iter().rev().take_while(|&&b| !b).count()
    }

    /// Drops the last bit.
    pub fn strip_last(&self) -> Self {
        let mut bits = self.bits.clone();
        let dropped = bits.pop().unwrap_or(false);
        BitString { bits, weight: self.weight - dropped as usize }
    }

    /// Drops the last bit and puts `front` at the start.
    pub fn recycle(&self, front: bool) -> Self {
        let n = self.bits.len();
        let mut bits = Vec::with_capacity(n.max(1));
        bits.push(front);
        if n > 0 {
            bits.extend_from_slice(&self.bits[..n - 1]);
        }
        let dropped = self.bits.last().copied().unwrap_or(false);
        BitString { bits, weight: self.weight + front as usize - dropped as usize }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn basic_ops() {
        let b = BitString::parse("0110").unwrap();
        assert_eq!(b.weight(), 2);
        assert_eq!(b.strip_last().to_string(), "011");
        assert_eq!(b.recycle(true).to_string(), "1011");
        assert_eq!(b.recycle(true).weight(), 3);
        assert_eq!(BitString::parse("01").unwrap().recycle(false).weight(), 0);
        assert_eq!(BitString::ones_then_zeros(2, 3).to_string(), "11000");
        assert_eq!(b.trailing_zeros(), 1);
        assert!(BitString::parse("012").is_err());
    }
}
