//! Speck round function and the Speck-128 block cipher family.
//!
//! Byte conventions follow the reference implementation: words are little
//! endian, a block is `y || x` and a key is `k0 || l0 || l1 ...`.

use super::{BlockCipher128, CipherError, CipherKey};

/// Speck parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpeckVariant {
    pub block_bits: u32,
    pub key_bits: u32,
    pub alpha: u32,
    pub beta: u32,
    pub rounds: usize,
}

impl SpeckVariant {
    /// 64-bit block over 32-bit words; the lane structure MAVShield builds on.
    pub const SPECK64_128: Self = Self::new(64, 128, 27);
    pub const SPECK128_128: Self = Self::new(128, 128, 32);
    pub const SPECK128_192: Self = Self::new(128, 192, 33);
    pub const SPECK128_256: Self = Self::new(128, 256, 34);

    const fn new(block_bits: u32, key_bits: u32, rounds: usize) -> Self {
        Self {
            block_bits,
            key_bits,
            alpha: 8,
            beta: 3,
            rounds,
        }
    }

    pub fn word_bits(&self) -> u32 {
        self.block_bits / 2
    }

    pub fn key_words(&self) -> usize {
        (self.key_bits / self.word_bits()) as usize
    }

    fn name(&self) -> &'static str {
        match (self.block_bits, self.key_bits) {
            (128, 128) => "speck128_128",
            (128, 192) => "speck128_192",
            (128, 256) => "speck128_256",
            _ => "speck",
        }
    }
}

/// One round over 32-bit words: `a' = ((a >>> alpha) + b) ^ k`, `b' = (b <<< beta) ^ a'`.
#[inline]
pub fn round_forward(a: u32, b: u32, k: u32, variant: &SpeckVariant) -> (u32, u32) {
    let a = a.rotate_right(variant.alpha).wrapping_add(b) ^ k;
    let b = b.rotate_left(variant.beta) ^ a;
    (a, b)
}

/// Inverse of [`round_forward`] for the same key and variant.
#[inline]
pub fn round_inverse(a: u32, b: u32, k: u32, variant: &SpeckVariant) -> (u32, u32) {
    let b = (b ^ a).rotate_right(variant.beta);
    let a = (a ^ k).wrapping_sub(b).rotate_left(variant.alpha);
    (a, b)
}

#[inline]
fn round64(x: u64, y: u64, k: u64) -> (u64, u64) {
    let x = x.rotate_right(8).wrapping_add(y) ^ k;
    let y = y.rotate_left(3) ^ x;
    (x, y)
}

#[inline]
fn round64_inverse(x: u64, y: u64, k: u64) -> (u64, u64) {
    let y = (y ^ x).rotate_right(3);
    let x = (x ^ k).wrapping_sub(y).rotate_left(8);
    (x, y)
}

/// Speck with a 128-bit block and a 128, 192 or 256-bit key.
#[derive(Clone)]
pub struct Speck128 {
    variant: SpeckVariant,
    round_keys: Vec<u64>,
}

impl Speck128 {
    pub fn new(variant: SpeckVariant, key: &CipherKey) -> Result<Self, CipherError> {
        let expected = (variant.key_bits / 8) as usize;
        if variant.block_bits != 128 || !matches!(variant.key_bits, 128 | 192 | 256) {
            return Err(CipherError::InvalidKeyLength {
                suite: variant.name(),
                expected,
                actual: key.len(),
            });
        }
        if key.len() != expected {
            return Err(CipherError::InvalidKeyLength {
                suite: variant.name(),
                expected,
                actual: key.len(),
            });
        }
        let words: Vec<u64> = key
            .as_bytes()
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let mut k = words[0];
        let mut l = words[1..].to_vec();
        let mut round_keys = Vec::with_capacity(variant.rounds);
        for i in 0..variant.rounds {
            round_keys.push(k);
            let li = i % l.len();
            let (nl, nk) = round64(l[li], k, i as u64);
            l[li] = nl;
            k = nk;
        }
        Ok(Self { variant, round_keys })
    }

    pub fn variant(&self) -> SpeckVariant {
        self.variant
    }

    pub fn encrypt(&self, block: &[u8; 16]) -> [u8; 16] {
        let (mut x, mut y) = split(block);
        for &k in &self.round_keys {
            (x, y) = round64(x, y, k);
        }
        join(x, y)
    }

    pub fn decrypt(&self, block: &[u8; 16]) -> [u8; 16] {
        let (mut x, mut y) = split(block);
        for &k in self.round_keys.iter().rev() {
            (x, y) = round64_inverse(x, y, k);
        }
        join(x, y)
    }
}

/// Encrypts a single block; builds the key schedule on every call.
pub fn speck128_encrypt_block(
    key: &CipherKey,
    variant: SpeckVariant,
    block: &[u8; 16],
) -> Result<[u8; 16], CipherError> {
    Ok(Speck128::new(variant, key)?.encrypt(block))
}

impl BlockCipher128 for Speck128 {
    fn encrypt_block(&self, block: &[u8; 16]) -> [u8; 16] {
        self.encrypt(block)
    }
}

fn split(block: &[u8; 16]) -> (u64, u64) {
    let y = u64::from_le_bytes(block[..8].try_into().unwrap());
    let x = u64::from_le_bytes(block[8..].try_into().unwrap());
    (x, y)
}

fn join(x: u64, y: u64) -> [u8; 16] {
    let mut out = [0u8; 16];
    out[..8].copy_from_slice(&y.to_le_bytes());
    out[8..].copy_from_slice(&x.to_le_bytes());
    out
}
