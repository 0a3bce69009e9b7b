use sts::BitSequence;

use super::{CipherPairRecord, HarnessError};

/// Which bytes of the ciphertext corpus feed the bitstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BitSource {
    /// `C || C'` records in file order.
    #[default]
    Concatenated,
    /// `C xor C'` per record.
    Xor,
    /// `C` only, dropping `C'`.
    Ciphertext,
}

/// Slices the corpus into `n_sequences` disjoint sequences of
/// `bits_per_sequence` bits, taken in file order and packed MSB first.
pub fn corpus_to_bitstreams(
    records: &[CipherPairRecord],
    source: BitSource,
    n_sequences: usize,
    bits_per_sequence: usize,
) -> Result<Vec<BitSequence>, HarnessError> {
    let bytes: Vec<u8> = match source {
        BitSource::Concatenated => records.iter().flat_map(|r| r.to_bytes()).collect(),
        BitSource::Xor => records
            .iter()
            .flat_map(|r| std::array::from_fn::<u8, 32, _>(|i| r.c[i] ^ r.c_prime[i]))
            .collect(),
        BitSource::Ciphertext => records.iter().flat_map(|r| r.c).collect(),
    };
    let needed = (n_sequences as u64) * (bits_per_sequence as u64);
    let available = bytes.len() as u64 * 8;
    if needed > available || n_sequences == 0 || bits_per_sequence == 0 {
        return Err(HarnessError::InsufficientData { needed, available });
    }
    Ok((0..n_sequences)
        .map(|k| BitSequence::from_packed_range(&bytes, k * bits_per_sequence, bits_per_sequence))
        .collect())
}
