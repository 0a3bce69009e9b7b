//! Frequency, block frequency, runs and cumulative sums.

use crate::special::{erfc, igamc, normal_cdf};
use crate::{invalid, too_short, StsError, TestKind, TestParams};

const RECOMMENDED_N: usize = 100;

fn check_recommended(kind: TestKind, n: usize, params: &TestParams) -> Result<(), StsError> {
    if params.enforce_recommended && n < RECOMMENDED_N {
        return Err(too_short(kind, n, format!("recommended n >= {RECOMMENDED_N}")));
    }
    if n == 0 {
        return Err(too_short(kind, n, "n >= 1"));
    }
    Ok(())
}

pub(crate) fn frequency(bits: &[u8], params: &TestParams) -> Result<f64, StsError> {
    let n = bits.len();
    check_recommended(TestKind::Frequency, n, params)?;
    let ones = bits.iter().filter(|&&b| b == 1).count() as f64;
    let s = (2.0 * ones - n as f64).abs();
    Ok(erfc(s / (n as f64).sqrt() / std::f64::consts::SQRT_2))
}

pub(crate) fn block_frequency(bits: &[u8], params: &TestParams) -> Result<f64, StsError> {
    let kind = TestKind::BlockFrequency;
    let n = bits.len();
    let m = params.block_frequency_m;
    if m == 0 {
        return Err(invalid(kind, "block length M must be positive"));
    }
    check_recommended(kind, n, params)?;
    if params.enforce_recommended && m < 20 {
        return Err(invalid(kind, format!("recommended M >= 20, got {m}")));
    }
    let blocks = n / m;
    if blocks == 0 {
        return Err(too_short(kind, n, format!("n >= M = {m}")));
    }
    let chi2: f64 = bits
        .chunks_exact(m)
        .map(|block| {
            let pi = block.iter().filter(|&&b| b == 1).count() as f64 / m as f64;
            (pi - 0.5) * (pi - 0.5)
        })
        .sum::<f64>()
        * 4.0
        * m as f64;
    Ok(igamc(blocks as f64 / 2.0, chi2 / 2.0))
}

pub(crate) fn runs(bits: &[u8], params: &TestParams) -> Result<f64, StsError> {
    let n = bits.len();
    check_recommended(TestKind::Runs, n, params)?;
    let nf = n as f64;
    let pi = bits.iter().filter(|&&b| b == 1).count() as f64 / nf;
    // Frequency prerequisite: the runs statistic is meaningless on a
    // grossly biased sequence.
    if (pi - 0.5).abs() >= 2.0 / nf.sqrt() {
        return Ok(0.0);
    }
    let v = 1 + bits.windows(2).filter(|w| w[0] != w[1]).count();
    let num = (v as f64 - 2.0 * nf * pi * (1.0 - pi)).abs();
    let den = 2.0 * (2.0 * nf).sqrt() * pi * (1.0 - pi);
    Ok(erfc(num / den))
}

/// Returns `[forward, backward]` p-values.
pub(crate) fn cumulative_sums(bits: &[u8], params: &TestParams) -> Result<Vec<f64>, StsError> {
    let n = bits.len();
    check_recommended(TestKind::CumulativeSums, n, params)?;
    let max_excursion = |iter: &mut dyn Iterator<Item = &u8>| {
        let mut s = 0i64;
        let mut z = 0i64;
        for &b in iter {
            s += if b == 1 { 1 } else { -1 };
            z = z.max(s.abs());
        }
        z
    };
    let forward = max_excursion(&mut bits.iter());
    let backward = max_excursion(&mut bits.iter().rev());
    Ok(vec![cusum_p(n as i64, forward), cusum_p(n as i64, backward)])
}

fn cusum_p(n: i64, z: i64) -> f64 {
    let sqrt_n = (n as f64).sqrt();
    let zf = z as f64;
    // Summation bounds use truncating integer division, as in the reference
    // implementation.
    let term = |k: i64, a: i64, b: i64| {
        normal_cdf((4 * k + a) as f64 * zf / sqrt_n) - normal_cdf((4 * k + b) as f64 * zf / sqrt_n)
    };
    let sum1: f64 = ((-n / z + 1) / 4..=(n / z - 1) / 4).map(|k| term(k, 1, -1)).sum();
    let sum2: f64 = ((-n / z - 3) / 4..=(n / z - 1) / 4).map(|k| term(k, 3, 1)).sum();
    1.0 - sum1 + sum2
}
