//! Chosen-plaintext corpus for differential analysis: unit-distance
//! plaintext pairs, their MAVShield ciphertext pairs, avalanche statistics
//! and bitstream views for the statistical battery.

mod avalanche;
mod bitstream;
mod pairs;
mod rng;

pub use avalanche::{avalanche_stats, avalanche_with, lane_avalanche, AvalancheStats, LaneReport};
pub use bitstream::{corpus_to_bitstreams, BitSource};
pub use pairs::{
    encrypt_pair, encrypt_pairs, encrypt_pt_file, gen_unit_distance_pairs, parse_ct_records,
    parse_pt_records, unit_distance_pair, write_pt_file, CipherPairRecord, PairRecord, RECORD_LEN,
};
pub use rng::SeededStream;

use thiserror::Error;

use crate::cipher::CipherError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed corpus: {len} bytes is not a positive multiple of {RECORD_LEN}")]
    Malformed { len: usize },
    #[error("corpus must contain at least one record")]
    Empty,
    #[error("corpus too large: {0} records exceeds the generator's 2^32 record space")]
    TooLarge(usize),
    #[error("plaintext and ciphertext corpora differ in length ({pt} vs {ct} records)")]
    LengthMismatch { pt: usize, ct: usize },
    #[error("insufficient data: need {needed} bits, corpus holds {available}")]
    InsufficientData { needed: u64, available: u64 },
    #[error(transparent)]
    Cipher(#[from] CipherError),
}
