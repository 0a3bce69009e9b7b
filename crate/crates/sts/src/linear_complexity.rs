use crate::special::igamc;
use crate::{invalid, too_short, StsError, TestKind, TestParams};

const PI: [f64; 7] = [0.01047, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833];

/// Length of the shortest LFSR generating `bits` (0/1 values).
pub fn berlekamp_massey(bits: &[u8]) -> usize {
    let n = bits.len();
    let mut c = vec![0u8; n + 1];
    let mut b = vec![0u8; n + 1];
    let mut t = vec![0u8; n + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut m: isize = -1;
    for i in 0..n {
        let mut d = bits[i];
        for j in 1..=l {
            d ^= c[j] & bits[i - j];
        }
        if d == 1 {
            t.copy_from_slice(&c);
            let shift = (i as isize - m) as usize;
            for j in 0..=n - shift {
                c[j + shift] ^= b[j];
            }
            if 2 * l <= i {
                l = i + 1 - l;
                m = i as isize;
                b.copy_from_slice(&t);
            }
        }
    }
    l
}

pub(crate) fn linear_complexity(bits: &[u8], params: &TestParams) -> Result<f64, StsError> {
    let kind = TestKind::LinearComplexity;
    let n = bits.len();
    let m = params.linear_complexity_m;
    if m == 0 {
        return Err(invalid(kind, "block length M must be positive"));
    }
    let blocks = n / m;
    if blocks == 0 {
        return Err(too_short(kind, n, format!("n >= M = {m}")));
    }
    if params.enforce_recommended {
        if !(500..=5000).contains(&m) {
            return Err(invalid(kind, format!("recommended 500 <= M <= 5000, got {m}")));
        }
        if blocks < 200 {
            return Err(too_short(kind, n, format!("recommended N = n / M >= 200 (M = {m})")));
        }
    }
    let mf = m as f64;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mu = mf / 2.0 + (9.0 - sign) / 36.0 - (mf / 3.0 + 2.0 / 9.0) / 2f64.powf(mf);
    let mut nu = [0u64; 7];
    for block in bits.chunks_exact(m) {
        let t = sign * (berlekamp_massey(block) as f64 - mu) + 2.0 / 9.0;
        let idx = match t {
            t if t <= -2.5 => 0,
            t if t <= -1.5 => 1,
            t if t <= -0.5 => 2,
            t if t <= 0.5 => 3,
            t if t <= 1.5 => 4,
            t if t <= 2.5 => 5,
            _ => 6,
        };
        nu[idx] += 1;
    }
    let nf = blocks as f64;
    let chi2: f64 = nu
        .iter()
        .zip(PI)
        .map(|(&v, p)| (v as f64 - nf * p).powi(2) / (nf * p))
        .sum();
    Ok(igamc(3.0, chi2 / 2.0))
}
