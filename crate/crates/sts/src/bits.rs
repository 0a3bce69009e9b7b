use std::fmt;
use std::str::FromStr;

use crate::StsError;

/// A bit sequence stored packed, most significant bit of each byte first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BitSequence {
    bytes: Vec<u8>,
    len: usize,
}

impl BitSequence {
    /// Builds a sequence from 0/1 values; any non-zero value counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut bytes = vec![0u8; bits.len().div_ceil(8)];
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                bytes[i / 8] |= 0x80 >> (i % 8);
            }
        }
        Self { bytes, len: bits.len() }
    }

    pub fn from_packed(bytes: &[u8]) -> Self {
        Self {
            bytes: bytes.to_vec(),
            len: bytes.len() * 8,
        }
    }

    /// Takes `len` bits starting at bit `start` of `bytes`.
    ///
    /// # Panics
    /// If the range runs past the end of `bytes`.
    pub fn from_packed_range(bytes: &[u8], start: usize, len: usize) -> Self {
        assert!(start + len <= bytes.len() * 8, "bit range out of bounds");
        if start.is_multiple_of(8) {
            let mut out = bytes[start / 8..(start + len).div_ceil(8)].to_vec();
            if !len.is_multiple_of(8) {
                let last = out.len() - 1;
                out[last] &= 0xffu8 << (8 - len % 8);
            }
            return Self { bytes: out, len };
        }
        let bits: Vec<u8> = (start..start + len)
            .map(|i| (bytes[i / 8] >> (7 - i % 8)) & 1)
            .collect();
        Self::from_bits(&bits)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: usize) -> u8 {
        assert!(i < self.len, "bit index {i} out of range");
        (self.bytes[i / 8] >> (7 - i % 8)) & 1
    }

    /// Unpacks to one byte (0 or 1) per bit.
    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.bit(i)).collect()
    }

    /// The packed bytes; bits past `len` in the last byte are zero.
    pub fn as_packed(&self) -> &[u8] {
        &self.bytes
    }

    pub fn count_ones(&self) -> usize {
        self.bytes.iter().map(|b| b.count_ones() as usize).sum()
    }
}

impl FromStr for BitSequence {
    type Err = StsError;

    /// Parses `0`/`1` characters, ignoring whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                other => {
                    return Err(StsError::Io(format!("invalid bit character {other:?}")));
                }
            }
        }
        Ok(Self::from_bits(&bits))
    }
}

impl fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSequence({} bits)", self.len)
    }
}
