//! Statistical tests from NIST SP 800-22 and a proportion-based battery.
//!
//! Ten tests are provided: frequency, block frequency, runs, longest run of
//! ones, cumulative sums, serial, approximate entropy, linear complexity,
//! non-overlapping template and overlapping template. A sequence passes a
//! test when every p-value the test produces exceeds `alpha` (0.025 by
//! default); a test passes the battery when at least `min_pass` of the
//! sequences pass it.

mod battery;
mod bits;
mod config;
mod export;
mod frequency;
mod linear_complexity;
mod longest_run;
mod serial;
pub mod special;
mod template;

pub use battery::{proportion_assess, run_battery, Assessment, BatteryReport, SequenceOutcome, TestSummary};
pub use bits::BitSequence;
pub use config::BatteryConfig;
pub use export::export_dieharder;
pub use linear_complexity::berlekamp_massey;
pub use template::overlapping_probabilities;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StsError {
    #[error("{kind}: sequence too short ({actual} bits): {rule}")]
    SequenceTooShort {
        kind: TestKind,
        actual: usize,
        rule: String,
    },
    #[error("{kind}: invalid parameter: {reason}")]
    InvalidParameter { kind: TestKind, reason: String },
    #[error("{kind}: statistic produced a non-finite p-value")]
    NonFinite { kind: TestKind },
    #[error("invalid config line {line}: {reason}")]
    Config { line: usize, reason: String },
    #[error("unknown test kind `{0}`")]
    UnknownKind(String),
    #[error("battery needs at least one sequence")]
    NoSequences,
    #[error("I/O error: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TestKind {
    Frequency,
    BlockFrequency,
    Runs,
    LongestRun,
    CumulativeSums,
    Serial,
    ApproximateEntropy,
    LinearComplexity,
    NonOverlappingTemplate,
    OverlappingTemplate,
}

impl TestKind {
    pub const ALL: [TestKind; 10] = [
        TestKind::Frequency,
        TestKind::BlockFrequency,
        TestKind::Runs,
        TestKind::LongestRun,
        TestKind::CumulativeSums,
        TestKind::Serial,
        TestKind::ApproximateEntropy,
        TestKind::LinearComplexity,
        TestKind::NonOverlappingTemplate,
        TestKind::OverlappingTemplate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TestKind::Frequency => "frequency",
            TestKind::BlockFrequency => "block_frequency",
            TestKind::Runs => "runs",
            TestKind::LongestRun => "longest_run",
            TestKind::CumulativeSums => "cumulative_sums",
            TestKind::Serial => "serial",
            TestKind::ApproximateEntropy => "approximate_entropy",
            TestKind::LinearComplexity => "linear_complexity",
            TestKind::NonOverlappingTemplate => "non_overlapping_template",
            TestKind::OverlappingTemplate => "overlapping_template",
        }
    }
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestKind {
    type Err = StsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TestKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| StsError::UnknownKind(s.to_string()))
    }
}

/// Tuning values for every test. Defaults are the battery's standard setup.
#[derive(Debug, Clone, PartialEq)]
pub struct TestParams {
    /// Per-sequence significance level; a p-value must exceed it to pass.
    pub alpha: f64,
    pub block_frequency_m: usize,
    pub serial_m: usize,
    pub approximate_entropy_m: usize,
    pub linear_complexity_m: usize,
    /// Aperiodic template as 0/1 values.
    pub non_overlapping_template: Vec<u8>,
    pub non_overlapping_blocks: usize,
    /// Length of the all-ones overlapping template.
    pub overlapping_m: usize,
    pub overlapping_block: usize,
    /// Category probabilities for the overlapping test (6 entries). `None`
    /// computes them exactly for the configured `m` and block length.
    pub overlapping_probabilities: Option<[f64; 6]>,
    /// Reject sequences shorter than the recommended input sizes, in
    /// addition to the hard structural minimums.
    pub enforce_recommended: bool,
}

impl Default for TestParams {
    fn default() -> Self {
        Self {
            alpha: 0.025,
            block_frequency_m: 128,
            serial_m: 2,
            approximate_entropy_m: 2,
            linear_complexity_m: 500,
            non_overlapping_template: vec![0, 0, 0, 0, 0, 0, 0, 0, 1],
            non_overlapping_blocks: 8,
            overlapping_m: 9,
            overlapping_block: 1032,
            overlapping_probabilities: None,
            enforce_recommended: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestResult {
    pub kind: TestKind,
    /// One p-value for most tests; two for serial (`del psi^2`, `del^2 psi^2`)
    /// and cumulative sums (forward, backward).
    pub p_values: Vec<f64>,
    pub passed: bool,
    /// The tuning values used, rendered as `name=value` pairs.
    pub params: String,
}

impl TestResult {
    fn new(kind: TestKind, p_values: Vec<f64>, alpha: f64, params: String) -> Result<Self, StsError> {
        if p_values.iter().any(|p| !p.is_finite()) {
            return Err(StsError::NonFinite { kind });
        }
        let p_values: Vec<f64> = p_values.into_iter().map(|p| p.clamp(0.0, 1.0)).collect();
        let passed = p_values.iter().all(|&p| p > alpha);
        Ok(Self {
            kind,
            p_values,
            passed,
            params,
        })
    }

    pub fn p_value(&self) -> f64 {
        self.p_values[0]
    }
}

pub(crate) fn too_short(kind: TestKind, actual: usize, rule: impl Into<String>) -> StsError {
    StsError::SequenceTooShort {
        kind,
        actual,
        rule: rule.into(),
    }
}

pub(crate) fn invalid(kind: TestKind, reason: impl Into<String>) -> StsError {
    StsError::InvalidParameter {
        kind,
        reason: reason.into(),
    }
}

/// Runs one test on one sequence.
pub fn nist_test(kind: TestKind, seq: &BitSequence, params: &TestParams) -> Result<TestResult, StsError> {
    let bits = seq.to_bits();
    let (p_values, used) = match kind {
        TestKind::Frequency => (vec![frequency::frequency(&bits, params)?], String::new()),
        TestKind::BlockFrequency => (
            vec![frequency::block_frequency(&bits, params)?],
            format!("M={}", params.block_frequency_m),
        ),
        TestKind::Runs => (vec![frequency::runs(&bits, params)?], String::new()),
        TestKind::LongestRun => longest_run::longest_run(&bits, params)?,
        TestKind::CumulativeSums => (frequency::cumulative_sums(&bits, params)?, String::new()),
        TestKind::Serial => (serial::serial(&bits, params)?, format!("m={}", params.serial_m)),
        TestKind::ApproximateEntropy => (
            vec![serial::approximate_entropy(&bits, params)?],
            format!("m={}", params.approximate_entropy_m),
        ),
        TestKind::LinearComplexity => (
            vec![linear_complexity::linear_complexity(&bits, params)?],
            format!("M={}", params.linear_complexity_m),
        ),
        TestKind::NonOverlappingTemplate => (
            vec![template::non_overlapping(&bits, params)?],
            format!(
                "B={},N={}",
                params.non_overlapping_template.iter().map(|b| char::from(b'0' + b)).collect::<String>(),
                params.non_overlapping_blocks
            ),
        ),
        TestKind::OverlappingTemplate => (
            vec![template::overlapping(&bits, params)?],
            format!("m={},M={}", params.overlapping_m, params.overlapping_block),
        ),
    };
    TestResult::new(kind, p_values, params.alpha, used)
}
