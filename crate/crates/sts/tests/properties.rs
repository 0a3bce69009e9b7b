use proptest::prelude::*;
use sts::{nist_test, run_battery, BitSequence, TestKind, TestParams};

fn relaxed() -> TestParams {
    TestParams {
        enforce_recommended: false,
        linear_complexity_m: 64,
        overlapping_block: 128,
        ..TestParams::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn p_values_lie_in_unit_interval(bytes in prop::collection::vec(any::<u8>(), 32..400)) {
        let seq = BitSequence::from_packed(&bytes);
        for kind in TestKind::ALL {
            if let Ok(r) = nist_test(kind, &seq, &relaxed()) {
                for p in &r.p_values {
                    prop_assert!((0.0..=1.0).contains(p), "{kind}: {p}");
                }
            }
        }
    }

    #[test]
    fn frequency_decreases_with_imbalance(n in 100usize..2000, a in 0usize..2000, b in 0usize..2000) {
        let p = |ones: usize| {
            let bits: Vec<u8> = (0..n).map(|i| u8::from(i < ones)).collect();
            nist_test(TestKind::Frequency, &BitSequence::from_bits(&bits), &TestParams::default())
                .unwrap()
                .p_value()
        };
        let (a, b) = (a.min(n), b.min(n));
        let (da, db) = ((2 * a).abs_diff(n), (2 * b).abs_diff(n));
        if da < db {
            let (pa, pb) = (p(a), p(b));
            // Strict until erfc underflows to zero at extreme imbalance.
            prop_assert!(pa > pb || (pa == 0.0 && pb == 0.0), "{pa} {pb}");
        }
    }
}

fn xorshift_bits(seed: u64, n: usize) -> BitSequence {
    let mut x = seed | 1;
    let bytes: Vec<u8> = (0..n / 8)
        .map(|_| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x >> 56) as u8
        })
        .collect();
    BitSequence::from_packed(&bytes)
}

#[test]
fn battery_is_deterministic() {
    let seqs: Vec<_> = (0..10).map(|i| xorshift_bits(0x9e37_79b9 + i, 100_000)).collect();
    let a = run_battery(&seqs, &TestParams::default()).unwrap();
    let b = run_battery(&seqs, &TestParams::default()).unwrap();
    assert_eq!(a.to_csv(8), b.to_csv(8));
    assert_eq!(a.errors().count(), 0, "{:?}", a.errors().collect::<Vec<_>>());
}

#[test]
fn constant_corpus_fails_everything() {
    for byte in [0x00, 0xff, 0x01, 0xa7] {
        let seqs: Vec<_> = (0..3).map(|_| BitSequence::from_packed(&[byte; 12_500])).collect();
        let report = run_battery(&seqs, &TestParams::default()).unwrap();
        for test in &report.tests {
            assert_eq!(test.proportion(), 0, "{byte:#04x} {}", test.kind);
        }
    }
    // A balanced constant byte satisfies the pure counting tests (frequency,
    // block frequency, cumulative sums), but every sequence still fails the
    // battery as a whole.
    for byte in [0x55, 0x3c] {
        let seqs: Vec<_> = (0..3).map(|_| BitSequence::from_packed(&[byte; 12_500])).collect();
        let report = run_battery(&seqs, &TestParams::default()).unwrap();
        let structural = [TestKind::Runs, TestKind::Serial, TestKind::ApproximateEntropy, TestKind::LinearComplexity];
        for test in report.tests.iter().filter(|t| structural.contains(&t.kind)) {
            assert_eq!(test.proportion(), 0, "{byte:#04x} {}", test.kind);
        }
    }
}
