use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use mavshield::cipher::build_cipher;
use mavshield::harness::{
    avalanche_stats, corpus_to_bitstreams, encrypt_pt_file, lane_avalanche, parse_ct_records, parse_pt_records,
    write_pt_file, BitSource, SeededStream,
};
use mavshield::link::{ChannelConfig, ChannelState, Endpoint, MavFrame, MessageDefs};
use mavshield::{CipherKey, CipherSuite, CounterBlock128, Nonce64};
use sts::{export_dieharder, proportion_assess, run_battery, BatteryConfig};

use crate::bench::{bench_suites, render_report, Format, DEFAULT_SIZES, REPORT_NOTE};

#[derive(Debug, Parser)]
#[command(name = "mavshield", version, about = "MAVShield cipher suite and MAVLink payload-encryption toolkit")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derive a key and session nonce from a seed; prints a channel config.
    Keygen {
        #[arg(long, value_parser = parse_suite)]
        suite: CipherSuite,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encrypt or decrypt a file in CTR/stream mode (the same operation).
    Xcrypt {
        #[command(flatten)]
        channel: ChannelArgs,
        /// 128-bit initial counter block, hex.
        #[arg(long, value_parser = parse_iv)]
        iv: CounterBlock128,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Wrap a payload file in an encrypted MAVLink 2.0 frame.
    FrameSeal {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long)]
        msgid: u32,
        #[arg(long, default_value_t = 1)]
        sysid: u8,
        #[arg(long, default_value_t = 1)]
        compid: u8,
        /// Extended sequence number of this frame.
        #[arg(long, default_value_t = 0)]
        seq: u64,
        #[arg(long, value_enum, default_value_t = Role::Gcs)]
        endpoint: Role,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify and decrypt one MAVLink 2.0 frame; writes the payload.
    FrameOpen {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Extended sequence number expected next.
        #[arg(long, default_value_t = 0)]
        seq: u64,
        #[arg(long, value_enum, default_value_t = Role::Uav)]
        endpoint: Role,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate unit-distance plaintext pairs (pt.bin).
    GenPairs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "pt.bin")]
        out: PathBuf,
    },
    /// Encrypt plaintext pairs under MAVShield (ct.bin).
    EncryptPairs {
        #[arg(long, value_parser = parse_key)]
        key: CipherKey,
        #[arg(long, value_parser = parse_nonce)]
        nonce: Nonce64,
        #[arg(long = "in", default_value = "pt.bin")]
        input: PathBuf,
        #[arg(long, default_value = "ct.bin")]
        out: PathBuf,
    },
    /// Hamming-distance statistics of a ciphertext-pair corpus.
    Avalanche {
        #[arg(long = "in", default_value = "ct.bin")]
        input: PathBuf,
        /// Matching plaintext corpus, for the per-lane report.
        #[arg(long)]
        pt: Option<PathBuf>,
    },
    /// Run the statistical battery on a ciphertext-pair corpus.
    Nist {
        #[arg(long = "in", default_value = "ct.bin")]
        input: PathBuf,
        /// Battery config (`key = value` lines).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Which ciphertext bits form the sequences.
        #[arg(long, value_enum, default_value_t = Bits::Pairs)]
        bits: Bits,
        #[arg(long)]
        n: Option<usize>,
        /// CSV report path; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export ciphertext bytes as a raw stream for dieharder.
    ExportBits {
        #[arg(long = "in", default_value = "ct.bin")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Throughput of every suite at framed and bulk sizes.
    Bench {
        /// Comma-separated suites; `none` is always included.
        #[arg(long, value_delimiter = ',', value_parser = parse_suite)]
        suite: Vec<CipherSuite>,
        /// Comma-separated payload sizes in bytes.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Seconds per (suite, size) cell.
        #[arg(long, default_value_t = 0.5)]
        duration: f64,
        #[arg(long, default_value = "table", value_parser = parse_format)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Link secrets, from a config file or from individual flags.
#[derive(Debug, Args)]
struct ChannelArgs {
    #[arg(long, conflicts_with_all = ["suite", "key", "nonce"])]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_suite)]
    suite: Option<CipherSuite>,
    #[arg(long, value_parser = parse_key)]
    key: Option<CipherKey>,
    #[arg(long, value_parser = parse_nonce)]
    nonce: Option<Nonce64>,
    /// Message definitions file (`msgid name crc_extra max_len`).
    #[arg(long)]
    defs: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Role {
    Gcs,
    Uav,
}

impl From<Role> for Endpoint {
    fn from(r: Role) -> Self {
        match r {
            Role::Gcs => Endpoint::Gcs,
            Role::Uav => Endpoint::Uav,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Bits {
    /// C || C' records in file order.
    Pairs,
    /// C xor C' per record.
    Xor,
    /// C only.
    C,
}

fn parse_suite(s: &str) -> Result<CipherSuite, String> {
    s.parse().map_err(|e: mavshield::CipherError| e.to_string())
}

fn parse_key(s: &str) -> Result<CipherKey, String> {
    CipherKey::from_hex(s).map_err(|e| e.to_string())
}

fn parse_nonce(s: &str) -> Result<Nonce64, String> {
    Nonce64::from_hex(s).map_err(|e| e.to_string())
}

fn parse_iv(s: &str) -> Result<CounterBlock128, String> {
    CounterBlock128::from_hex(s).map_err(|e| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: anyhow::Error| e.to_string())
}

impl ChannelArgs {
    fn config(&self) -> Result<ChannelConfig> {
        if let Some(path) = &self.config {
            return Ok(ChannelConfig::parse(&read_text(path)?)?);
        }
        let Some(suite) = self.suite else {
            bail!("either --config or --suite is required");
        };
        let key = match (&self.key, suite) {
            (Some(k), _) => k.clone(),
            (None, CipherSuite::None) => CipherKey::new(Vec::new()),
            (None, _) => bail!("--key is required for suite {suite}"),
        };
        Ok(ChannelConfig {
            suite,
            key,
            session_nonce: self.nonce.unwrap_or(Nonce64(0)),
        })
    }

    fn defs(&self) -> Result<MessageDefs> {
        match &self.defs {
            Some(path) => Ok(MessageDefs::parse(&read_text(path)?)?),
            None => Ok(MessageDefs::builtin()),
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_bytes(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Keygen { suite, seed, out } => {
            let mut rng = SeededStream::new(seed);
            let mut key = vec![0u8; suite.key_len()];
            rng.fill_bytes(&mut key);
            let nonce = Nonce64(rng.next_u64());
            let mut text = format!("suite = {suite}\n");
            if !key.is_empty() {
                text.push_str(&format!("key_hex = {}\n", hex::encode(&key)));
            }
            text.push_str(&format!("session_nonce_hex = {}\n", nonce.to_hex()));
            emit(out.as_deref(), &text)
        }
        Command::Xcrypt { channel, iv, input, out } => {
            let cfg = channel.config()?;
            let cipher = build_cipher(cfg.suite, &cfg.key, cfg.session_nonce)?;
            let mut data = read_bytes(&input)?;
            cipher.xcrypt(&iv, &mut data);
            write_bytes(&out, &data)
        }
        Command::FrameSeal {
            channel,
            msgid,
            sysid,
            compid,
            seq,
            endpoint,
            input,
            out,
        } => {
            let cfg = channel.config()?;
            let mut state = ChannelState::new(&cfg, endpoint.into(), channel.defs()?)?.with_counters(seq, 0);
            let frame = MavFrame {
                sysid,
                compid,
                msgid,
                payload: read_bytes(&input)?,
                ..MavFrame::default()
            };
            let wire = state.seal_payload(&frame)?;
            write_bytes(&out, &wire)
        }
        Command::FrameOpen {
            channel,
            seq,
            endpoint,
            input,
            out,
        } => {
            let cfg = channel.config()?;
            let mut state = ChannelState::new(&cfg, endpoint.into(), channel.defs()?)?.with_counters(0, seq);
            let frame = state.open_payload(&read_bytes(&input)?)?;
            println!(
                "msgid={} seq={} sysid={} compid={} len={}",
                frame.msgid,
                frame.seq,
                frame.sysid,
                frame.compid,
                frame.payload.len()
            );
            write_bytes(&out, &frame.payload)
        }
        Command::GenPairs { n, seed, out } => {
            write_pt_file(&out, n, seed)?;
            println!("wrote {n} pairs to {}", out.display());
            Ok(())
        }
        Command::EncryptPairs { key, nonce, input, out } => {
            let n = encrypt_pt_file(&input, &out, &key, nonce)?;
            println!("wrote {n} ciphertext pairs to {}", out.display());
            Ok(())
        }
        Command::Avalanche { input, pt } => {
            let ct = parse_ct_records(&read_bytes(&input)?)?;
            let stats = avalanche_stats(&ct)?;
            println!(
                "pairs={} mean_hd={:.4} stdev_hd={:.4}",
                stats.n_pairs, stats.mean_hd, stats.stdev_hd
            );
            if let Some(pt) = pt {
                let pt = parse_pt_records(&read_bytes(&pt)?)?;
                let lanes = lane_avalanche(&pt, &ct)?;
                println!(
                    "affected_lane_mean_hd={:.4} unaffected_block_identical={}/{}",
                    lanes.affected_lane.mean_hd, lanes.unaffected_block_identical, stats.n_pairs
                );
            }
            Ok(())
        }
        Command::Nist {
            input,
            config,
            bits,
            n,
            out,
        } => {
            let mut cfg = match config {
                Some(path) => BatteryConfig::parse(&read_text(&path)?)?,
                None => BatteryConfig::default(),
            };
            if let Some(n) = n {
                cfg.n_sequences = n;
            }
            let source = match bits {
                Bits::Pairs => BitSource::Concatenated,
                Bits::Xor => BitSource::Xor,
                Bits::C => BitSource::Ciphertext,
            };
            let ct = parse_ct_records(&read_bytes(&input)?)?;
            let seqs = corpus_to_bitstreams(&ct, source, cfg.n_sequences, cfg.sequence_bits)?;
            let report = run_battery(&seqs, &cfg.params)?;
            for (kind, seq, err) in report.errors() {
                eprintln!("warning: {kind} on sequence {seq}: {err}");
            }
            let verdict = proportion_assess(&report, cfg.min_pass, cfg.n_sequences);
            emit(out.as_deref(), &report.to_csv(cfg.min_pass))?;
            eprintln!(
                "battery verdict: {} (min pass {}/{})",
                if verdict.overall { "pass" } else { "fail" },
                cfg.min_pass,
                cfg.n_sequences
            );
            Ok(())
        }
        Command::ExportBits { input, out } => {
            let n = export_dieharder(&input, &out)?;
            println!("wrote {n} bytes to {}", out.display());
            Ok(())
        }
        Command::Bench {
            suite,
            sizes,
            duration,
            format,
            seed,
            out,
        } => {
            let suites = if suite.is_empty() { CipherSuite::ALL.to_vec() } else { suite };
            let sizes = if sizes.is_empty() { DEFAULT_SIZES.to_vec() } else { sizes };
            if !(duration.is_finite() && duration > 0.0) {
                bail!("--duration must be a positive number of seconds");
            }
            let rows = bench_suites(&suites, &sizes, Duration::from_secs_f64(duration), seed)?;
            if format == Format::Csv {
                eprintln!("note: {REPORT_NOTE}");
            }
            emit(out.as_deref(), &render_report(&rows, format))
        }
    }
}
