use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{HarnessError, SeededStream};
use crate::cipher::mavshield::MavShield;
use crate::cipher::{BlockCipher128, CipherKey, Nonce64};

/// Bytes per record in `pt.bin` and `ct.bin`: two 32-byte halves.
pub const RECORD_LEN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairRecord {
    pub p: [u8; 32],
    pub p_prime: [u8; 32],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CipherPairRecord {
    pub c: [u8; 32],
    pub c_prime: [u8; 32],
}

fn split_record(chunk: &[u8]) -> ([u8; 32], [u8; 32]) {
    (chunk[..32].try_into().unwrap(), chunk[32..].try_into().unwrap())
}

fn join_record(a: &[u8; 32], b: &[u8; 32]) -> [u8; RECORD_LEN] {
    let mut out = [0u8; RECORD_LEN];
    out[..32].copy_from_slice(a);
    out[32..].copy_from_slice(b);
    out
}

impl PairRecord {
    pub fn to_bytes(&self) -> [u8; RECORD_LEN] {
        join_record(&self.p, &self.p_prime)
    }

    pub fn hamming_distance(&self) -> u32 {
        hamming(&self.p, &self.p_prime)
    }

    /// Index of the first byte where `p` and `p_prime` differ.
    pub fn flipped_byte(&self) -> Option<usize> {
        self.p.iter().zip(&self.p_prime).position(|(a, b)| a != b)
    }
}

impl CipherPairRecord {
    pub fn to_bytes(&self) -> [u8; RECORD_LEN] {
        join_record(&self.c, &self.c_prime)
    }

    pub fn hamming_distance(&self) -> u32 {
        hamming(&self.c, &self.c_prime)
    }
}

pub(crate) fn hamming(a: &[u8], b: &[u8]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
}

/// Record `q` of the corpus seeded by `stream`: P is the first 32 bytes of
/// keystream block `q`, and P' flips the least-significant bit of byte
/// `block[32] mod 32` of P.
pub fn unit_distance_pair(stream: &SeededStream, q: u32) -> PairRecord {
    let block = stream.block(q);
    let p: [u8; 32] = block[..32].try_into().unwrap();
    let mut p_prime = p;
    p_prime[usize::from(block[32] & 31)] ^= 1;
    PairRecord { p, p_prime }
}

pub fn gen_unit_distance_pairs(
    n: usize,
    seed: u64,
) -> Result<impl Iterator<Item = PairRecord>, HarnessError> {
    if n == 0 {
        return Err(HarnessError::Empty);
    }
    let n = u32::try_from(n).map_err(|_| HarnessError::TooLarge(n))?;
    let stream = SeededStream::new(seed);
    Ok((0..n).map(move |q| unit_distance_pair(&stream, q)))
}

/// Writes `n` records to `path` (created or truncated).
pub fn write_pt_file(path: impl AsRef<Path>, n: usize, seed: u64) -> Result<(), HarnessError> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    for record in gen_unit_distance_pairs(n, seed)? {
        out.write_all(&record.to_bytes())?;
    }
    out.flush()?;
    Ok(())
}

fn check_len(bytes: &[u8]) -> Result<(), HarnessError> {
    if bytes.is_empty() || !bytes.len().is_multiple_of(RECORD_LEN) {
        return Err(HarnessError::Malformed { len: bytes.len() });
    }
    Ok(())
}

pub fn parse_pt_records(bytes: &[u8]) -> Result<Vec<PairRecord>, HarnessError> {
    check_len(bytes)?;
    Ok(bytes
        .chunks_exact(RECORD_LEN)
        .map(|c| {
            let (p, p_prime) = split_record(c);
            PairRecord { p, p_prime }
        })
        .collect())
}

pub fn parse_ct_records(bytes: &[u8]) -> Result<Vec<CipherPairRecord>, HarnessError> {
    check_len(bytes)?;
    Ok(bytes
        .chunks_exact(RECORD_LEN)
        .map(|c| {
            let (c, c_prime) = split_record(c);
            CipherPairRecord { c, c_prime }
        })
        .collect())
}

fn encrypt_32<C: BlockCipher128 + ?Sized>(cipher: &C, pt: &[u8; 32]) -> [u8; 32] {
    let mut out = [0u8; 32];
    for (dst, src) in out.chunks_exact_mut(16).zip(pt.chunks_exact(16)) {
        dst.copy_from_slice(&cipher.encrypt_block(src.try_into().unwrap()));
    }
    out
}

/// Encrypts both plaintexts as two independent 16-byte blocks each (ECB).
pub fn encrypt_pair<C: BlockCipher128 + ?Sized>(cipher: &C, record: &PairRecord) -> CipherPairRecord {
    CipherPairRecord {
        c: encrypt_32(cipher, &record.p),
        c_prime: encrypt_32(cipher, &record.p_prime),
    }
}

pub fn encrypt_pairs<C: BlockCipher128 + ?Sized>(
    cipher: &C,
    records: &[PairRecord],
) -> Vec<CipherPairRecord> {
    records.iter().map(|r| encrypt_pair(cipher, r)).collect()
}

/// Reads `pt_path`, encrypts every record under one MAVShield schedule and
/// writes `ct_path`. Returns the record count.
pub fn encrypt_pt_file(
    pt_path: impl AsRef<Path>,
    ct_path: impl AsRef<Path>,
    key: &CipherKey,
    nonce: Nonce64,
) -> Result<usize, HarnessError> {
    let cipher = MavShield::new(key, nonce)?;
    let records = parse_pt_records(&fs::read(pt_path)?)?;
    let mut out = BufWriter::new(fs::File::create(ct_path)?);
    for record in &records {
        out.write_all(&encrypt_pair(&cipher, record).to_bytes())?;
    }
    out.flush()?;
    Ok(records.len())
}
