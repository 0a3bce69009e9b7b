use std::fmt;

use super::CipherError;

/// Secret key bytes. The accepted length depends on the suite.
#[derive(Clone, PartialEq, Eq)]
pub struct CipherKey(Vec<u8>);

impl CipherKey {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Self {
        Self(bytes.into())
    }

    pub fn from_hex(s: &str) -> Result<Self, CipherError> {
        decode_hex("key", s).map(Self)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    /// Returns the key as a fixed-size array, or an invalid-key error naming `suite`.
    pub fn expect_len<const N: usize>(&self, suite: &'static str) -> Result<[u8; N], CipherError> {
        self.0
            .as_slice()
            .try_into()
            .map_err(|_| CipherError::InvalidKeyLength {
                suite,
                expected: N,
                actual: self.0.len(),
            })
    }
}

// Keys never show up in logs.
impl fmt::Debug for CipherKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CipherKey({} bytes)", self.0.len())
    }
}

/// 64-bit nonce seeding the MAVShield key schedule.
///
/// The hex form is the big-endian rendering of the integer, so
/// `"0001020304050607"` is `0x0001020304050607`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Nonce64(pub u64);

impl Nonce64 {
    pub fn from_hex(s: &str) -> Result<Self, CipherError> {
        let bytes: [u8; 8] = fixed_hex("nonce", s)?;
        Ok(Self(u64::from_be_bytes(bytes)))
    }

    pub fn to_hex(self) -> String {
        format!("{:016x}", self.0)
    }
}

/// 128-bit CTR counter block. Increments as a big-endian integer and wraps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CounterBlock128(pub [u8; 16]);

impl CounterBlock128 {
    pub fn from_hex(s: &str) -> Result<Self, CipherError> {
        fixed_hex("iv", s).map(Self)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn as_u128(&self) -> u128 {
        u128::from_be_bytes(self.0)
    }

    /// Counter value `self + offset (mod 2^128)`.
    pub fn offset(&self, offset: u128) -> Self {
        Self(self.as_u128().wrapping_add(offset).to_be_bytes())
    }

    pub fn increment(&mut self) {
        *self = self.offset(1);
    }
}

fn decode_hex(what: &'static str, s: &str) -> Result<Vec<u8>, CipherError> {
    hex::decode(s.trim()).map_err(|e| CipherError::InvalidHex {
        what,
        reason: e.to_string(),
    })
}

pub(crate) fn fixed_hex<const N: usize>(what: &'static str, s: &str) -> Result<[u8; N], CipherError> {
    let bytes = decode_hex(what, s)?;
    let actual = bytes.len();
    bytes.try_into().map_err(|_| CipherError::InvalidLength {
        what,
        expected: N,
        actual,
    })
}
