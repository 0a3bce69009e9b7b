//! Payload ciphers for MAVLink 2.0 links.
//!
//! The crate is split in three layers:
//!
//! * [`cipher`]: MAVShield, Speck-128, ChaCha20, Rabbit and AES-128 with a
//!   common CTR/keystream interface ([`cipher::PayloadCipher`]).
//! * [`link`]: a MAVLink 2.0 frame codec that encrypts payloads before the
//!   checksum is computed and verifies the checksum before decrypting.
//! * [`harness`]: unit-distance plaintext pairs, their ciphertext pairs and
//!   the avalanche / bitstream views used for statistical testing.

pub mod cipher;
pub mod harness;
pub mod link;

pub use cipher::{CipherError, CipherKey, CipherSuite, CounterBlock128, Nonce64, PayloadCipher};
