//! Desk-scale throughput comparison across cipher suites.
//!
//! Framed cells (payload sizes up to 255 bytes) time a seal + open round
//! trip through a pair of MAVLink channels. Bulk cells (larger sizes) time
//! copying a buffer and encrypting it, then copying and decrypting it again.
//! Sampling runs in rounds that visit every cell once; after one warm-up
//! round each cell reports the median of its five timed samples.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Context, Result};
use mavshield::cipher::build_cipher;
use mavshield::harness::SeededStream;
use mavshield::link::{ChannelConfig, ChannelState, Endpoint, MavFrame, MessageDefs};
use mavshield::{CipherKey, CipherSuite, CounterBlock128, Nonce64, PayloadCipher};

/// Bulk cell size: 1 MiB.
pub const BULK_SIZE: usize = 1 << 20;
/// Largest payload a single frame carries.
pub const MAX_FRAMED: usize = 255;
pub const DEFAULT_SIZES: [usize; 4] = [16, 64, 255, BULK_SIZE];
const SAMPLES: usize = 5;
const FRAMED_MSGID: u32 = 131;

pub const CSV_HEADER: &str = "suite,payload_size,throughput_Bps,frames_per_s,overhead_pct";
pub const REPORT_NOTE: &str = "desk-scale throughput on this host; power, memory and \
flight-controller CPU figures are hardware-bound and not measured";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub suite: CipherSuite,
    pub payload_size: usize,
    /// Payload bytes per second.
    pub throughput_bps: f64,
    /// Frames (bulk: buffers) per second.
    pub frames_per_s: f64,
    /// Extra time per byte relative to the `none` suite, in percent.
    pub overhead_pct: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            other => bail!("unknown format `{other}` (expected csv or table)"),
        }
    }
}

/// Benchmarks every (suite, size) pair. The `none` baseline is always
/// included; rows come back sorted by suite (in [`CipherSuite::ALL`] order)
/// and then size.
pub fn bench_suites(suites: &[CipherSuite], sizes: &[usize], duration_per_cell: Duration, seed: u64) -> Result<Vec<BenchRow>> {
    ensure!(
        duration_per_cell >= Duration::from_millis(100),
        "duration per cell must be at least 0.1 s"
    );
    ensure!(!sizes.is_empty(), "no payload sizes given");
    ensure!(sizes.iter().all(|&s| s > 0), "payload sizes must be positive");
    let mut suites: Vec<CipherSuite> = CipherSuite::ALL
        .into_iter()
        .filter(|s| *s == CipherSuite::None || suites.contains(s))
        .collect();
    suites.dedup();
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();

    let mut rng = SeededStream::new(seed);
    let mut cells = Vec::new();
    for &suite in &suites {
        let mut key = vec![0u8; suite.key_len()];
        rng.fill_bytes(&mut key);
        let config = ChannelConfig {
            suite,
            key: CipherKey::new(key),
            session_nonce: Nonce64(rng.next_u64()),
        };
        for &size in &sizes {
            let work = if size <= MAX_FRAMED {
                Workload::framed(&config, size, &mut rng)?
            } else {
                Workload::bulk(&config, size, &mut rng)?
            };
            cells.push((suite, size, work, Vec::with_capacity(SAMPLES)));
        }
    }

    // Rounds interleave the cells, so slow drift in host speed shifts every
    // suite alike instead of whichever ran last. Round 0 is the warm-up.
    let per_sample = duration_per_cell / (SAMPLES as u32 + 1);
    for round in 0..=SAMPLES {
        for (_, _, work, rates) in cells.iter_mut() {
            let rate = sample(per_sample, || work.step());
            if round > 0 {
                rates.push(rate);
            }
        }
    }

    let mut rows = Vec::with_capacity(cells.len());
    for (suite, size, work, mut rates) in cells {
        work.finish().with_context(|| format!("{suite} at {size} bytes"))?;
        rates.sort_by(f64::total_cmp);
        let iters_per_s = rates[SAMPLES / 2];
        rows.push(BenchRow {
            suite,
            payload_size: size,
            throughput_bps: iters_per_s * size as f64,
            frames_per_s: iters_per_s,
            overhead_pct: 0.0,
        });
    }
    for i in 0..rows.len() {
        let base = rows
            .iter()
            .find(|r| r.suite == CipherSuite::None && r.payload_size == rows[i].payload_size)
            .map(|r| r.throughput_bps)
            .expect("baseline row present");
        rows[i].overhead_pct = (base / rows[i].throughput_bps - 1.0) * 100.0;
    }
    Ok(rows)
}

/// Runs `step` repeatedly for `span`, returning iterations per second.
fn sample(span: Duration, mut step: impl FnMut()) -> f64 {
    let start = Instant::now();
    let mut iters = 0u64;
    loop {
        for _ in 0..8 {
            step();
        }
        iters += 8;
        let elapsed = start.elapsed();
        if elapsed >= span {
            return iters as f64 / elapsed.as_secs_f64();
        }
    }
}

/// One benchmark cell's state. Framed cells seal and open whole MAVLink
/// frames; bulk cells run the raw payload cipher both ways over a buffer.
enum Workload {
    Framed {
        tx: ChannelState,
        rx: ChannelState,
        frames: Vec<MavFrame>,
        next: usize,
        failure: Option<anyhow::Error>,
    },
    Bulk {
        cipher: Box<dyn PayloadCipher>,
        input: Vec<u8>,
        wire: Vec<u8>,
        output: Vec<u8>,
        iv: CounterBlock128,
    },
}

impl Workload {
    fn framed(config: &ChannelConfig, size: usize, rng: &mut SeededStream) -> Result<Self> {
        let defs = MessageDefs::builtin();
        let frames = (0..64)
            .map(|_| {
                let mut payload = vec![0u8; size];
                rng.fill_bytes(&mut payload);
                payload[size - 1] |= 1;
                MavFrame {
                    sysid: 1,
                    compid: 1,
                    msgid: FRAMED_MSGID,
                    payload,
                    ..MavFrame::default()
                }
            })
            .collect();
        Ok(Workload::Framed {
            tx: ChannelState::new(config, Endpoint::Gcs, defs.clone())?,
            rx: ChannelState::new(config, Endpoint::Uav, defs)?,
            frames,
            next: 0,
            failure: None,
        })
    }

    fn bulk(config: &ChannelConfig, size: usize, rng: &mut SeededStream) -> Result<Self> {
        let mut input = vec![0u8; size];
        rng.fill_bytes(&mut input);
        Ok(Workload::Bulk {
            cipher: build_cipher(config.suite, &config.key, config.session_nonce)?,
            input,
            wire: vec![0u8; size],
            output: vec![0u8; size],
            iv: CounterBlock128(rng.bytes()),
        })
    }

    fn step(&mut self) {
        match self {
            Workload::Framed {
                tx,
                rx,
                frames,
                next,
                failure,
            } => {
                let frame = &frames[*next % frames.len()];
                *next += 1;
                match tx.seal_payload(frame).and_then(|wire| rx.open_payload(&wire)) {
                    Ok(opened) if opened.payload[..frame.payload.len()] == frame.payload[..] => {}
                    Ok(_) => *failure = Some(anyhow::anyhow!("round trip mismatch")),
                    Err(e) => *failure = Some(e.into()),
                }
            }
            Workload::Bulk {
                cipher,
                input,
                wire,
                output,
                iv,
            } => {
                wire.copy_from_slice(input);
                cipher.xcrypt(iv, wire);
                output.copy_from_slice(wire);
                cipher.xcrypt(iv, output);
                iv.increment();
            }
        }
    }

    fn finish(self) -> Result<()> {
        match self {
            Workload::Framed { failure: Some(e), .. } => Err(e),
            Workload::Bulk { input, output, .. } => {
                ensure!(output == input, "bulk round trip mismatch");
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Deterministic text rendering. CSV has exactly the documented columns;
/// the table adds a note on what is (not) measured.
pub fn render_report(rows: &[BenchRow], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{:.0},{:.1},{:.2}",
                    r.suite, r.payload_size, r.throughput_bps, r.frames_per_s, r.overhead_pct
                );
            }
        }
        Format::Table => {
            let _ = writeln!(out, "# {REPORT_NOTE}");
            let _ = writeln!(
                out,
                "{:<14} {:>12} {:>16} {:>14} {:>12}",
                "suite", "payload_size", "throughput_Bps", "frames_per_s", "overhead_pct"
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "{:<14} {:>12} {:>16.0} {:>14.1} {:>12.2}",
                    r.suite.name(),
                    r.payload_size,
                    r.throughput_bps,
                    r.frames_per_s,
                    r.overhead_pct
                );
            }
        }
    }
    out
}

/// Suites ordered fastest first at `size`.
pub fn ranking(rows: &[BenchRow], size: usize) -> Vec<CipherSuite> {
    let mut at: Vec<&BenchRow> = rows.iter().filter(|r| r.payload_size == size).collect();
    at.sort_by(|a, b| b.throughput_bps.total_cmp(&a.throughput_bps));
    at.into_iter().map(|r| r.suite).collect()
}
