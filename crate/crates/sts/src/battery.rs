use std::fmt::Write as _;
use std::thread;

use crate::{nist_test, BitSequence, StsError, TestKind, TestParams, TestResult};

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceOutcome {
    pub seq_index: usize,
    /// An error (for example a sequence too short for the test) counts as a
    /// failure for that sequence.
    pub result: Result<TestResult, StsError>,
}

impl SequenceOutcome {
    pub fn passed(&self) -> bool {
        matches!(&self.result, Ok(r) if r.passed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestSummary {
    pub kind: TestKind,
    pub outcomes: Vec<SequenceOutcome>,
}

impl TestSummary {
    /// Number of sequences that passed.
    pub fn proportion(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed()).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatteryReport {
    pub n_sequences: usize,
    /// One entry per test, in `TestKind::ALL` order.
    pub tests: Vec<TestSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assessment {
    /// (test, passing sequences, verdict) in report order.
    pub per_test: Vec<(TestKind, usize, bool)>,
    pub overall: bool,
}

/// Applies every test to every sequence. Sequences are evaluated in
/// parallel; the report is ordered by (test, sequence index).
pub fn run_battery(sequences: &[BitSequence], params: &TestParams) -> Result<BatteryReport, StsError> {
    if sequences.is_empty() {
        return Err(StsError::NoSequences);
    }
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(sequences.len());
    let chunk = sequences.len().div_ceil(workers);
    let per_sequence: Vec<Vec<Result<TestResult, StsError>>> = thread::scope(|s| {
        let handles: Vec<_> = sequences
            .chunks(chunk)
            .map(|group| {
                s.spawn(move || {
                    group
                        .iter()
                        .map(|seq| TestKind::ALL.iter().map(|&k| nist_test(k, seq, params)).collect())
                        .collect::<Vec<Vec<_>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("battery worker panicked"))
            .collect()
    });
    let tests = TestKind::ALL
        .iter()
        .enumerate()
        .map(|(t, &kind)| TestSummary {
            kind,
            outcomes: per_sequence
                .iter()
                .enumerate()
                .map(|(seq_index, results)| SequenceOutcome {
                    seq_index,
                    result: results[t].clone(),
                })
                .collect(),
        })
        .collect();
    Ok(BatteryReport {
        n_sequences: sequences.len(),
        tests,
    })
}

/// A test passes when at least `min_pass` of `n_sequences` sequences pass
/// it; the battery passes when every test does. A `min_pass` above
/// `n_sequences` can never be met.
pub fn proportion_assess(report: &BatteryReport, min_pass: usize, n_sequences: usize) -> Assessment {
    debug_assert!(report.n_sequences <= n_sequences);
    let per_test: Vec<_> = report
        .tests
        .iter()
        .map(|t| {
            let passes = t.proportion();
            (t.kind, passes, passes >= min_pass && min_pass <= n_sequences)
        })
        .collect();
    let overall = per_test.iter().all(|&(_, _, ok)| ok);
    Assessment { per_test, overall }
}

impl BatteryReport {
    /// Serializes as `test,seq_index,p_value,passed` rows followed by a
    /// blank line and a `test,proportion,verdict` summary block. Tests with
    /// two statistics list both p-values separated by `;`; a test that
    /// could not run has an empty p-value.
    pub fn to_csv(&self, min_pass: usize) -> String {
        let mut out = String::from("test,seq_index,p_value,passed\n");
        for test in &self.tests {
            for o in &test.outcomes {
                let p = match &o.result {
                    Ok(r) => r.p_values.iter().map(|p| format!("{p:.6}")).collect::<Vec<_>>().join(";"),
                    Err(_) => String::new(),
                };
                let _ = writeln!(out, "{},{},{},{}", test.kind, o.seq_index, p, o.passed());
            }
        }
        let assessment = proportion_assess(self, min_pass, self.n_sequences);
        out.push_str("\ntest,proportion,verdict\n");
        for (kind, passes, ok) in &assessment.per_test {
            let _ = writeln!(out, "{kind},{passes}/{},{}", self.n_sequences, verdict(*ok));
        }
        let _ = writeln!(out, "overall,,{}", verdict(assessment.overall));
        out
    }

    /// Per-sequence errors, for diagnostics.
    pub fn errors(&self) -> impl Iterator<Item = (TestKind, usize, &StsError)> {
        self.tests.iter().flat_map(|t| {
            t.outcomes
                .iter()
                .filter_map(move |o| o.result.as_ref().err().map(|e| (t.kind, o.seq_index, e)))
        })
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}
