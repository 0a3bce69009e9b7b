use std::fmt;
use std::str::FromStr;

use crate::cipher::{build_cipher, CipherKey, CipherSuite, CounterBlock128, Nonce64, PayloadCipher};

use super::{parse_frame, serialize_frame, LinkError, MavFrame, MessageDefs};

pub const HEARTBEAT_ID: u32 = 0;
/// Forward distance (in 8-bit sequence numbers) accepted on receive.
pub const WRAP_WINDOW: u8 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Direction {
    ToUav = 0x01,
    ToGcs = 0x02,
}

/// Which end of the link a channel serves; fixes the send and receive
/// directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Gcs,
    Uav,
}

impl Endpoint {
    pub fn tx_direction(self) -> Direction {
        match self {
            Endpoint::Gcs => Direction::ToUav,
            Endpoint::Uav => Direction::ToGcs,
        }
    }

    pub fn rx_direction(self) -> Direction {
        match self {
            Endpoint::Gcs => Direction::ToGcs,
            Endpoint::Uav => Direction::ToUav,
        }
    }
}

impl FromStr for Endpoint {
    type Err = LinkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gcs" => Ok(Endpoint::Gcs),
            "uav" => Ok(Endpoint::Uav),
            _ => Err(LinkError::Config {
                line: 0,
                reason: format!("unknown endpoint `{s}` (expected gcs or uav)"),
            }),
        }
    }
}

/// Shared link secrets, agreed out of band.
#[derive(Clone, PartialEq, Eq)]
pub struct ChannelConfig {
    pub suite: CipherSuite,
    pub key: CipherKey,
    pub session_nonce: Nonce64,
}

impl fmt::Debug for ChannelConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChannelConfig")
            .field("suite", &self.suite)
            .field("key", &self.key)
            .field("session_nonce", &self.session_nonce)
            .finish()
    }
}

impl ChannelConfig {
    /// Parses `suite`, `key_hex` and `session_nonce_hex` from `key = value`
    /// lines. `key_hex` may be omitted for the `none` suite.
    pub fn parse(text: &str) -> Result<Self, LinkError> {
        let (mut suite, mut key, mut nonce) = (None, None, None);
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: String| LinkError::Config { line: idx + 1, reason };
            let (k, v) = line.split_once('=').ok_or_else(|| err("expected `key = value`".into()))?;
            let v = v.trim();
            match k.trim() {
                "suite" => suite = Some(v.parse::<CipherSuite>().map_err(|e| err(e.to_string()))?),
                "key_hex" => key = Some(CipherKey::from_hex(v).map_err(|e| err(e.to_string()))?),
                "session_nonce_hex" => nonce = Some(Nonce64::from_hex(v).map_err(|e| err(e.to_string()))?),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let missing = |what: &str| LinkError::Config {
            line: 0,
            reason: format!("missing `{what}`"),
        };
        let suite = suite.ok_or_else(|| missing("suite"))?;
        let key = match key {
            Some(k) => k,
            None if suite == CipherSuite::None => CipherKey::new(Vec::new()),
            None => return Err(missing("key_hex")),
        };
        Ok(Self {
            suite,
            key,
            session_nonce: nonce.ok_or_else(|| missing("session_nonce_hex"))?,
        })
    }
}

/// Per-packet IV: session nonce (8 bytes, big endian) || direction ||
/// 0x00 || low 48 bits of the extended sequence (big endian).
pub fn derive_packet_iv(session_nonce: Nonce64, direction: Direction, extended_seq: u64) -> CounterBlock128 {
    let mut iv = [0u8; 16];
    iv[..8].copy_from_slice(&session_nonce.0.to_be_bytes());
    iv[8] = direction as u8;
    iv[10..].copy_from_slice(&extended_seq.to_be_bytes()[2..]);
    CounterBlock128(iv)
}

/// One endpoint's crypto session: seals outgoing frames and opens incoming
/// ones. Each direction keeps its own 64-bit extended sequence counter.
pub struct ChannelState {
    cipher: Box<dyn PayloadCipher>,
    session_nonce: Nonce64,
    endpoint: Endpoint,
    tx_counter: u64,
    rx_counter: u64,
    defs: MessageDefs,
}

impl fmt::Debug for ChannelState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChannelState")
            .field("suite", &self.cipher.suite())
            .field("endpoint", &self.endpoint)
            .field("tx_counter", &self.tx_counter)
            .field("rx_counter", &self.rx_counter)
            .finish_non_exhaustive()
    }
}

impl ChannelState {
    pub fn new(config: &ChannelConfig, endpoint: Endpoint, defs: MessageDefs) -> Result<Self, LinkError> {
        let cipher = build_cipher(config.suite, &config.key, config.session_nonce)?;
        Ok(Self::with_cipher(cipher, config.session_nonce, endpoint, defs))
    }

    /// Uses a caller-supplied cipher, e.g. an instrumented one.
    pub fn with_cipher(
        cipher: Box<dyn PayloadCipher>,
        session_nonce: Nonce64,
        endpoint: Endpoint,
        defs: MessageDefs,
    ) -> Self {
        Self {
            cipher,
            session_nonce,
            endpoint,
            tx_counter: 0,
            rx_counter: 0,
            defs,
        }
    }

    /// Starts both counters at the given extended sequence values.
    pub fn with_counters(mut self, tx: u64, rx: u64) -> Self {
        self.tx_counter = tx;
        self.rx_counter = rx;
        self
    }

    pub fn suite(&self) -> CipherSuite {
        self.cipher.suite()
    }

    pub fn defs(&self) -> &MessageDefs {
        &self.defs
    }

    /// Extended sequence number the next sealed frame will carry.
    pub fn tx_counter(&self) -> u64 {
        self.tx_counter
    }

    /// Extended sequence number expected on the next received frame.
    pub fn rx_counter(&self) -> u64 {
        self.rx_counter
    }

    pub fn derive_packet_iv(&self, direction: Direction, extended_seq: u64) -> CounterBlock128 {
        derive_packet_iv(self.session_nonce, direction, extended_seq)
    }

    fn encrypts(&self, msgid: u32) -> bool {
        msgid != HEARTBEAT_ID && self.cipher.suite() != CipherSuite::None
    }

    /// Encrypts the payload, then serializes (the checksum covers the
    /// ciphertext). The frame's `seq` is replaced by the channel's counter.
    /// Trailing zeros are trimmed from the plaintext before encryption; at
    /// least one payload byte is kept.
    pub fn seal_payload(&mut self, frame: &MavFrame) -> Result<Vec<u8>, LinkError> {
        let mut out = frame.clone();
        out.seq = self.tx_counter as u8;
        let keep = out.payload.iter().rposition(|&b| b != 0).map_or(1, |i| i + 1);
        out.payload.truncate(keep);
        if self.encrypts(out.msgid) {
            let iv = self.derive_packet_iv(self.endpoint.tx_direction(), self.tx_counter);
            self.cipher.xcrypt(&iv, &mut out.payload);
        }
        let bytes = serialize_frame(&out, &self.defs)?;
        self.tx_counter += 1;
        Ok(bytes)
    }

    /// Verifies the checksum, reconstructs the extended sequence, then
    /// decrypts. The payload is zero-extended to the message's full length.
    /// Nothing is decrypted unless the frame parsed and its sequence number
    /// lies within the forward window.
    pub fn open_payload(&mut self, bytes: &[u8]) -> Result<MavFrame, LinkError> {
        let mut frame = parse_frame(bytes, &self.defs)?;
        let expected = self.rx_counter as u8;
        let delta = frame.seq.wrapping_sub(expected);
        if delta >= WRAP_WINDOW {
            return Err(LinkError::Desync {
                seq: frame.seq,
                expected,
            });
        }
        let extended = self.rx_counter + delta as u64;
        if self.encrypts(frame.msgid) {
            let iv = self.derive_packet_iv(self.endpoint.rx_direction(), extended);
            self.cipher.xcrypt(&iv, &mut frame.payload);
        }
        let full = self.defs.get(frame.msgid)?.max_len as usize;
        frame.payload.resize(full.max(frame.payload.len()), 0);
        self.rx_counter = extended + 1;
        Ok(frame)
    }
}
