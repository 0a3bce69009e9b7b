//! Serial and approximate entropy: both count overlapping m-bit patterns
//! with wrap-around.

use crate::special::igamc;
use crate::{invalid, too_short, StsError, TestKind, TestParams};

const MAX_M: usize = 24;

/// Counts of each m-bit pattern over the sequence extended cyclically.
fn pattern_counts(bits: &[u8], m: usize) -> Vec<u64> {
    let mut counts = vec![0u64; 1 << m];
    if m == 0 {
        counts[0] = bits.len() as u64;
        return counts;
    }
    let mask = (1usize << m) - 1;
    let mut value = 0usize;
    for &b in &bits[..m - 1] {
        value = (value << 1) | b as usize;
    }
    for &b in bits[m - 1..].iter().chain(&bits[..m - 1]) {
        value = ((value << 1) | b as usize) & mask;
        counts[value] += 1;
    }
    counts
}

fn floor_log2(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

fn check_m(kind: TestKind, n: usize, m: usize, margin: usize, min_m: usize, params: &TestParams) -> Result<(), StsError> {
    if m < min_m || m > MAX_M {
        return Err(invalid(kind, format!("m must be in {min_m}..={MAX_M}, got {m}")));
    }
    if n < m + 1 {
        return Err(too_short(kind, n, format!("n > m = {m}")));
    }
    if params.enforce_recommended && m + margin >= floor_log2(n) {
        return Err(too_short(kind, n, format!("recommended m < floor(log2 n) - {margin}")));
    }
    Ok(())
}

fn psi_sq(bits: &[u8], m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = bits.len() as f64;
    let sum: f64 = pattern_counts(bits, m).iter().map(|&c| (c as f64) * (c as f64)).sum();
    sum * (1u64 << m) as f64 / n - n
}

/// Returns the p-values for the first and second differences of psi^2.
pub(crate) fn serial(bits: &[u8], params: &TestParams) -> Result<Vec<f64>, StsError> {
    let m = params.serial_m;
    check_m(TestKind::Serial, bits.len(), m, 2, 2, params)?;
    let p0 = psi_sq(bits, m);
    let p1 = psi_sq(bits, m - 1);
    let p2 = psi_sq(bits, m - 2);
    let del1 = p0 - p1;
    let del2 = p0 - 2.0 * p1 + p2;
    let df = 2f64.powi(m as i32 - 2);
    Ok(vec![igamc(df, del1 / 2.0), igamc(df / 2.0, del2 / 2.0)])
}

fn phi(bits: &[u8], m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = bits.len() as f64;
    pattern_counts(bits, m)
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * p.ln()
        })
        .sum()
}

pub(crate) fn approximate_entropy(bits: &[u8], params: &TestParams) -> Result<f64, StsError> {
    let m = params.approximate_entropy_m;
    check_m(TestKind::ApproximateEntropy, bits.len(), m, 5, 1, params)?;
    if m + 1 > MAX_M {
        return Err(invalid(TestKind::ApproximateEntropy, "m + 1 exceeds the pattern limit"));
    }
    let apen = phi(bits, m) - phi(bits, m + 1);
    let chi2 = 2.0 * bits.len() as f64 * (std::f64::consts::LN_2 - apen);
    Ok(igamc(2f64.powi(m as i32 - 1), chi2 / 2.0))
}
