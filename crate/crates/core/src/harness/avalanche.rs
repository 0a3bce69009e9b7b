use super::pairs::hamming;
use super::{gen_unit_distance_pairs, CipherPairRecord, HarnessError, PairRecord};
use crate::cipher::BlockCipher128;

/// Hamming-distance summary over a set of pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct AvalancheStats {
    pub n_pairs: u64,
    pub mean_hd: f64,
    pub stdev_hd: f64,
    /// `histogram[d]` counts pairs at distance `d`.
    pub histogram: Vec<u64>,
}

impl AvalancheStats {
    fn from_distances(width_bits: usize, distances: impl IntoIterator<Item = u32>) -> Self {
        let mut histogram = vec![0u64; width_bits + 1];
        for d in distances {
            histogram[d as usize] += 1;
        }
        let n: u64 = histogram.iter().sum();
        let nf = n as f64;
        let mean = histogram
            .iter()
            .enumerate()
            .map(|(d, &c)| d as f64 * c as f64)
            .sum::<f64>()
            / nf;
        let var = histogram
            .iter()
            .enumerate()
            .map(|(d, &c)| (d as f64 - mean).powi(2) * c as f64)
            .sum::<f64>()
            / nf;
        Self {
            n_pairs: n,
            mean_hd: mean,
            stdev_hd: var.sqrt(),
            histogram,
        }
    }
}

/// Per-record distance between `C` and `C'` over all 256 bits.
pub fn avalanche_stats(records: &[CipherPairRecord]) -> Result<AvalancheStats, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::Empty);
    }
    Ok(AvalancheStats::from_distances(
        256,
        records.iter().map(CipherPairRecord::hamming_distance),
    ))
}

/// Generates `n` pairs from `seed`, encrypts them with `cipher` and summarises.
pub fn avalanche_with<C: BlockCipher128 + ?Sized>(
    cipher: &C,
    n: usize,
    seed: u64,
) -> Result<AvalancheStats, HarnessError> {
    let records: Vec<_> = gen_unit_distance_pairs(n, seed)?
        .map(|r| super::encrypt_pair(cipher, &r))
        .collect();
    avalanche_stats(&records)
}

/// Avalanche restricted to the 64-bit lane holding the flipped bit.
///
/// A 32-byte record is four lanes of 8 bytes; lanes 0/1 form the first
/// block, lanes 2/3 the second.
#[derive(Debug, Clone, PartialEq)]
pub struct LaneReport {
    pub affected_lane: AvalancheStats,
    /// Records whose other 16-byte block is identical in `C` and `C'`.
    pub unaffected_block_identical: u64,
    /// Records whose three untouched lanes are all identical.
    pub unaffected_lanes_identical: u64,
}

pub fn lane_avalanche(
    pt: &[PairRecord],
    ct: &[CipherPairRecord],
) -> Result<LaneReport, HarnessError> {
    if pt.len() != ct.len() {
        return Err(HarnessError::LengthMismatch {
            pt: pt.len(),
            ct: ct.len(),
        });
    }
    if pt.is_empty() {
        return Err(HarnessError::Empty);
    }
    let mut block_same = 0;
    let mut lanes_same = 0;
    let mut distances = Vec::with_capacity(pt.len());
    for (p, c) in pt.iter().zip(ct) {
        let lane = p.flipped_byte().unwrap_or(0) / 8;
        let lane_range = |l: usize| l * 8..l * 8 + 8;
        distances.push(hamming(&c.c[lane_range(lane)], &c.c_prime[lane_range(lane)]));

        let other_block = if lane < 2 { 16..32 } else { 0..16 };
        block_same += u64::from(c.c[other_block.clone()] == c.c_prime[other_block]);
        lanes_same += u64::from(
            (0..4)
                .filter(|&l| l != lane)
                .all(|l| c.c[lane_range(l)] == c.c_prime[lane_range(l)]),
        );
    }
    Ok(LaneReport {
        affected_lane: AvalancheStats::from_distances(64, distances),
        unaffected_block_identical: block_same,
        unaffected_lanes_identical: lanes_same,
    })
}
