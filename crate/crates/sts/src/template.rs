//! Non-overlapping and overlapping template matching.

use crate::special::igamc;
use crate::{invalid, too_short, StsError, TestKind, TestParams};

const MAX_TEMPLATE: usize = 21;

pub(crate) fn non_overlapping(bits: &[u8], params: &TestParams) -> Result<f64, StsError> {
    let kind = TestKind::NonOverlappingTemplate;
    let template = &params.non_overlapping_template;
    let m = template.len();
    let blocks = params.non_overlapping_blocks;
    if m == 0 || m > MAX_TEMPLATE || template.iter().any(|&b| b > 1) {
        return Err(invalid(kind, format!("template must be 1..={MAX_TEMPLATE} bits of 0/1")));
    }
    if blocks == 0 {
        return Err(invalid(kind, "block count N must be positive"));
    }
    let n = bits.len();
    let block_len = n / blocks;
    if block_len < m {
        return Err(too_short(kind, n, format!("block length n / N >= template length {m}")));
    }
    if params.enforce_recommended {
        if blocks > 100 {
            return Err(invalid(kind, format!("recommended N <= 100, got {blocks}")));
        }
        if block_len * 100 <= n {
            return Err(too_short(kind, n, "recommended block length M > 0.01 n"));
        }
    }
    let mf = block_len as f64;
    let two_m = 2f64.powi(m as i32);
    let mu = (mf - m as f64 + 1.0) / two_m;
    let var = mf * (1.0 / two_m - (2.0 * m as f64 - 1.0) / (two_m * two_m));
    let chi2: f64 = bits
        .chunks_exact(block_len)
        .take(blocks)
        .map(|block| {
            let mut w = 0u64;
            let mut i = 0;
            while i + m <= block.len() {
                if block[i..i + m] == template[..] {
                    w += 1;
                    i += m;
                } else {
                    i += 1;
                }
            }
            (w as f64 - mu).powi(2) / var
        })
        .sum();
    Ok(igamc(blocks as f64 / 2.0, chi2 / 2.0))
}

/// Probabilities that a random `block`-bit string holds 0, 1, 2, 3, 4 or at
/// least 5 overlapping occurrences of the all-ones template of length `m`.
///
/// Computed exactly by dynamic programming over (trailing ones, count).
pub fn overlapping_probabilities(m: usize, block: usize) -> [f64; 6] {
    assert!(m >= 1, "template length must be positive");
    // state[r][c]: trailing run r (capped at m - 1) and count c (capped at 5).
    let mut state = vec![[0f64; 6]; m];
    state[0][0] = 1.0;
    for _ in 0..block {
        let mut next = vec![[0f64; 6]; m];
        for (r, counts) in state.iter().enumerate() {
            for (c, &p) in counts.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                let half = p * 0.5;
                next[0][c] += half;
                if r + 1 == m {
                    next[m - 1][(c + 1).min(5)] += half;
                } else {
                    next[r + 1][c] += half;
                }
            }
        }
        state = next;
    }
    let mut out = [0f64; 6];
    for counts in &state {
        for (o, p) in out.iter_mut().zip(counts) {
            *o += p;
        }
    }
    out
}

pub(crate) fn overlapping(bits: &[u8], params: &TestParams) -> Result<f64, StsError> {
    let kind = TestKind::OverlappingTemplate;
    let m = params.overlapping_m;
    let block_len = params.overlapping_block;
    if m == 0 || m > MAX_TEMPLATE {
        return Err(invalid(kind, format!("template length must be in 1..={MAX_TEMPLATE}")));
    }
    if block_len < m {
        return Err(invalid(kind, "block length must be at least the template length"));
    }
    let n = bits.len();
    let blocks = n / block_len;
    if blocks == 0 {
        return Err(too_short(kind, n, format!("n >= block length {block_len}")));
    }
    let pi = params
        .overlapping_probabilities
        .unwrap_or_else(|| overlapping_probabilities(m, block_len));
    let nf = blocks as f64;
    if params.enforce_recommended {
        let min_expected = pi.iter().fold(f64::INFINITY, |a, &p| a.min(p)) * nf;
        if min_expected < 5.0 {
            return Err(too_short(
                kind,
                n,
                format!("recommended N * min(pi) >= 5 (N = {blocks}, block length {block_len})"),
            ));
        }
    }
    let mut nu = [0u64; 6];
    for block in bits.chunks_exact(block_len) {
        let mut run = 0usize;
        let mut count = 0usize;
        for &b in block {
            run = if b == 1 { run + 1 } else { 0 };
            if run >= m {
                count += 1;
            }
        }
        nu[count.min(5)] += 1;
    }
    let chi2: f64 = nu
        .iter()
        .zip(pi)
        .map(|(&v, p)| (v as f64 - nf * p).powi(2) / (nf * p))
        .sum();
    Ok(igamc(2.5, chi2 / 2.0))
}
