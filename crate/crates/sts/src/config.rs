use std::str::FromStr;

use crate::{StsError, TestParams};

/// Battery setup: test parameters plus corpus slicing and the pass rule.
#[derive(Debug, Clone, PartialEq)]
pub struct BatteryConfig {
    pub params: TestParams,
    pub n_sequences: usize,
    pub sequence_bits: usize,
    /// Minimum number of passing sequences for a test to pass.
    pub min_pass: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            params: TestParams::default(),
            n_sequences: 10,
            sequence_bits: 100_000,
            min_pass: 8,
        }
    }
}

impl BatteryConfig {
    /// Parses `key = value` lines over the defaults. `#` starts a comment.
    ///
    /// Keys: `alpha`, `n_sequences`, `sequence_bits`, `min_pass`,
    /// `enforce_recommended`, `block_frequency.m`, `serial.m`,
    /// `approximate_entropy.m`, `linear_complexity.m`,
    /// `non_overlapping.template` (bit string), `non_overlapping.blocks`,
    /// `overlapping.m`, `overlapping.block`, `overlapping.probabilities`
    /// (six comma-separated values).
    pub fn parse(text: &str) -> Result<Self, StsError> {
        let mut cfg = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: String| StsError::Config { line: line_no, reason };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let p = &mut cfg.params;
            match key {
                "alpha" => p.alpha = num(value).map_err(err)?,
                "n_sequences" => cfg.n_sequences = num(value).map_err(err)?,
                "sequence_bits" => cfg.sequence_bits = num(value).map_err(err)?,
                "min_pass" => cfg.min_pass = num(value).map_err(err)?,
                "enforce_recommended" => p.enforce_recommended = num(value).map_err(err)?,
                "block_frequency.m" => p.block_frequency_m = num(value).map_err(err)?,
                "serial.m" => p.serial_m = num(value).map_err(err)?,
                "approximate_entropy.m" => p.approximate_entropy_m = num(value).map_err(err)?,
                "linear_complexity.m" => p.linear_complexity_m = num(value).map_err(err)?,
                "non_overlapping.blocks" => p.non_overlapping_blocks = num(value).map_err(err)?,
                "non_overlapping.template" => {
                    p.non_overlapping_template = value
                        .chars()
                        .map(|c| match c {
                            '0' => Ok(0),
                            '1' => Ok(1),
                            other => Err(err(format!("bad template character {other:?}"))),
                        })
                        .collect::<Result<_, _>>()?;
                }
                "overlapping.m" => p.overlapping_m = num(value).map_err(err)?,
                "overlapping.block" => p.overlapping_block = num(value).map_err(err)?,
                "overlapping.probabilities" => {
                    let vals: Vec<f64> = value
                        .split(',')
                        .map(|v| num(v.trim()))
                        .collect::<Result<_, _>>()
                        .map_err(err)?;
                    let arr: [f64; 6] = vals
                        .try_into()
                        .map_err(|_| err("expected six probabilities".into()))?;
                    p.overlapping_probabilities = Some(arr);
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        if !(0.0..1.0).contains(&cfg.params.alpha) {
            return Err(StsError::Config {
                line: 0,
                reason: "alpha must lie in [0, 1)".into(),
            });
        }
        Ok(cfg)
    }
}

fn num<T: FromStr>(value: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| format!("`{value}`: {e}"))
}
