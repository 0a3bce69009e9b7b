//! Block and stream ciphers behind a uniform keystream interface.

pub mod aes;
pub mod chacha20;
pub mod ctr;
pub mod mavshield;
pub mod rabbit;
pub mod sbox;
pub mod speck;
mod suite;
mod types;

pub use ctr::{ctr_xcrypt, BlockCipher128};
pub use sbox::SubstitutionTable;
pub use suite::{build_cipher, CipherSuite, PayloadCipher};
pub use types::{CipherKey, CounterBlock128, Nonce64};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CipherError {
    #[error("invalid key length for {suite}: expected {expected} bytes, got {actual}")]
    InvalidKeyLength {
        suite: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("invalid hex for {what}: {reason}")]
    InvalidHex { what: &'static str, reason: String },
    #[error("invalid {what} length: expected {expected} bytes, got {actual}")]
    InvalidLength {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("unknown cipher suite `{0}`")]
    UnknownSuite(String),
    #[error("substitution table is not a permutation (value {0:#04x} repeats)")]
    NotAPermutation(u8),
}
