//! MAVLink 2.0 framing with payload encryption: encrypt before the checksum
//! on send, verify the checksum before decrypting on receive. HEARTBEAT
//! (msgid 0) always travels in the clear.

mod channel;
mod crc;
mod defs;
mod frame;

pub use channel::{
    derive_packet_iv, ChannelConfig, ChannelState, Direction, Endpoint, HEARTBEAT_ID, WRAP_WINDOW,
};
pub use crc::{crc_x25, X25};
pub use defs::{MessageDef, MessageDefs};
pub use frame::{
    parse_frame, parse_frame_prefix, serialize_frame, MavFrame, CHECKSUM_LEN, FLAG_SIGNED, HEADER_LEN, MAGIC,
    SIGNATURE_LEN,
};

use thiserror::Error;

use crate::cipher::CipherError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("bad magic byte {0:#04x} (expected 0xfd)")]
    BadMagic(u8),
    #[error("truncated frame: need {needed} bytes, have {available}")]
    Truncated { needed: usize, available: usize },
    #[error("checksum mismatch: computed {expected:#06x}, frame carries {actual:#06x}")]
    ChecksumMismatch { expected: u16, actual: u16 },
    #[error("no definition for message id {0}")]
    UnknownMessage(u32),
    #[error("message id {0} does not fit in 24 bits")]
    MsgIdOutOfRange(u32),
    #[error("{0} unexpected bytes after the frame")]
    TrailingBytes(usize),
    #[error("payload of message {msgid} is {len} bytes; definition allows {max}")]
    PayloadTooLong { msgid: u32, len: usize, max: u8 },
    #[error("signature presence disagrees with incompat_flags")]
    SignatureFlagMismatch,
    #[error("sequence {seq} outside the receive window (expected {expected})")]
    Desync { seq: u8, expected: u8 },
    #[error("duplicate definition for message id {0}")]
    DuplicateMessage(u32),
    #[error("definitions line {line}: {reason}")]
    Definitions { line: usize, reason: String },
    #[error("channel config line {line}: {reason}")]
    Config { line: usize, reason: String },
    #[error(transparent)]
    Cipher(#[from] CipherError),
}
