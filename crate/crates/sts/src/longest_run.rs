//! Longest run of ones in a block.

use crate::special::igamc;
use crate::{too_short, StsError, TestKind, TestParams};

struct Class {
    m: usize,
    /// Longest-run value of the first and last category; categories in
    /// between are one run length each.
    lo: usize,
    hi: usize,
    pi: &'static [f64],
}

const SMALL: Class = Class {
    m: 8,
    lo: 1,
    hi: 4,
    pi: &[0.21484375, 0.3671875, 0.23046875, 0.1875],
};

const MEDIUM: Class = Class {
    m: 128,
    lo: 4,
    hi: 9,
    pi: &[0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847],
};

const LARGE: Class = Class {
    m: 10_000,
    lo: 10,
    hi: 16,
    pi: &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727],
};

/// Block length follows the sequence length: 8 below 6272 bits, 128 below
/// 750 000 bits, 10 000 above.
pub(crate) fn longest_run(bits: &[u8], _params: &TestParams) -> Result<(Vec<f64>, String), StsError> {
    let n = bits.len();
    let class = match n {
        0..=127 => return Err(too_short(TestKind::LongestRun, n, "n >= 128")),
        128..=6271 => &SMALL,
        6272..=749_999 => &MEDIUM,
        _ => &LARGE,
    };
    let blocks = n / class.m;
    let mut nu = vec![0u64; class.pi.len()];
    for block in bits.chunks_exact(class.m) {
        let mut run = 0usize;
        let mut longest = 0usize;
        for &b in block {
            run = if b == 1 { run + 1 } else { 0 };
            longest = longest.max(run);
        }
        nu[longest.clamp(class.lo, class.hi) - class.lo] += 1;
    }
    let nf = blocks as f64;
    let chi2: f64 = nu
        .iter()
        .zip(class.pi)
        .map(|(&v, &p)| (v as f64 - nf * p).powi(2) / (nf * p))
        .sum();
    let k = (class.pi.len() - 1) as f64;
    Ok((vec![igamc(k / 2.0, chi2 / 2.0)], format!("M={}", class.m)))
}
