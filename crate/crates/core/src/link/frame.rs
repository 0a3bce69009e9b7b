use super::crc::X25;
use super::{LinkError, MessageDefs};

pub const MAGIC: u8 = 0xfd;
pub const HEADER_LEN: usize = 10;
pub const CHECKSUM_LEN: usize = 2;
pub const SIGNATURE_LEN: usize = 13;
/// `incompat_flags` bit announcing a trailing signature.
pub const FLAG_SIGNED: u8 = 0x01;

/// A MAVLink 2.0 frame. The checksum is not stored: it is computed on
/// serialization and verified on parsing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MavFrame {
    pub incompat_flags: u8,
    pub compat_flags: u8,
    pub seq: u8,
    pub sysid: u8,
    pub compid: u8,
    /// 24-bit message id.
    pub msgid: u32,
    pub payload: Vec<u8>,
    /// Carried verbatim; never generated or verified.
    pub signature: Option<[u8; SIGNATURE_LEN]>,
}

impl MavFrame {
    pub fn wire_len(&self) -> usize {
        HEADER_LEN + self.payload.len() + CHECKSUM_LEN + self.signature.map_or(0, |_| SIGNATURE_LEN)
    }

    fn header(&self) -> [u8; HEADER_LEN] {
        let id = self.msgid.to_le_bytes();
        [
            MAGIC,
            self.payload.len() as u8,
            self.incompat_flags,
            self.compat_flags,
            self.seq,
            self.sysid,
            self.compid,
            id[0],
            id[1],
            id[2],
        ]
    }

    /// Checksum over `len..payload` plus the message's CRC_EXTRA byte.
    pub fn checksum(&self, defs: &MessageDefs) -> Result<u16, LinkError> {
        let def = defs.get(self.msgid)?;
        let mut crc = X25::new();
        crc.update(&self.header()[1..]);
        crc.update(&self.payload);
        crc.update(&[def.crc_extra]);
        Ok(crc.value())
    }

    fn validate(&self, defs: &MessageDefs) -> Result<(), LinkError> {
        if self.msgid > 0xff_ffff {
            return Err(LinkError::MsgIdOutOfRange(self.msgid));
        }
        let def = defs.get(self.msgid)?;
        if self.payload.len() > def.max_len as usize {
            return Err(LinkError::PayloadTooLong {
                msgid: self.msgid,
                len: self.payload.len(),
                max: def.max_len,
            });
        }
        if (self.incompat_flags & FLAG_SIGNED != 0) != self.signature.is_some() {
            return Err(LinkError::SignatureFlagMismatch);
        }
        Ok(())
    }
}

pub fn serialize_frame(frame: &MavFrame, defs: &MessageDefs) -> Result<Vec<u8>, LinkError> {
    frame.validate(defs)?;
    let mut out = Vec::with_capacity(frame.wire_len());
    out.extend_from_slice(&frame.header());
    out.extend_from_slice(&frame.payload);
    out.extend_from_slice(&frame.checksum(defs)?.to_le_bytes());
    if let Some(sig) = &frame.signature {
        out.extend_from_slice(sig);
    }
    Ok(out)
}

/// Parses one frame from the front of `bytes`, returning it with the number
/// of bytes consumed. The checksum is verified before the frame is returned.
pub fn parse_frame_prefix(bytes: &[u8], defs: &MessageDefs) -> Result<(MavFrame, usize), LinkError> {
    let truncated = |needed| LinkError::Truncated {
        needed,
        available: bytes.len(),
    };
    match bytes.first() {
        None => return Err(truncated(HEADER_LEN + CHECKSUM_LEN)),
        Some(&MAGIC) => {}
        Some(&other) => return Err(LinkError::BadMagic(other)),
    }
    if bytes.len() < HEADER_LEN {
        return Err(truncated(HEADER_LEN + CHECKSUM_LEN));
    }
    let len = bytes[1] as usize;
    let incompat_flags = bytes[2];
    let signed = incompat_flags & FLAG_SIGNED != 0;
    let total = HEADER_LEN + len + CHECKSUM_LEN + if signed { SIGNATURE_LEN } else { 0 };
    if bytes.len() < total {
        return Err(truncated(total));
    }
    let msgid = u32::from_le_bytes([bytes[7], bytes[8], bytes[9], 0]);
    let body_end = HEADER_LEN + len;
    let frame = MavFrame {
        incompat_flags,
        compat_flags: bytes[3],
        seq: bytes[4],
        sysid: bytes[5],
        compid: bytes[6],
        msgid,
        payload: bytes[HEADER_LEN..body_end].to_vec(),
        signature: signed.then(|| bytes[body_end + CHECKSUM_LEN..total].try_into().unwrap()),
    };
    let expected = frame.checksum(defs)?;
    let actual = u16::from_le_bytes([bytes[body_end], bytes[body_end + 1]]);
    if expected != actual {
        return Err(LinkError::ChecksumMismatch { expected, actual });
    }
    frame.validate(defs)?;
    Ok((frame, total))
}

/// Parses exactly one frame; extra bytes after it are an error.
pub fn parse_frame(bytes: &[u8], defs: &MessageDefs) -> Result<MavFrame, LinkError> {
    let (frame, used) = parse_frame_prefix(bytes, defs)?;
    if used != bytes.len() {
        return Err(LinkError::TrailingBytes(bytes.len() - used));
    }
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heartbeat() -> MavFrame {
        MavFrame {
            sysid: 1,
            compid: 1,
            msgid: 0,
            payload: vec![0, 0, 0, 0, 2, 3, 0x51, 4, 3],
            ..MavFrame::default()
        }
    }

    #[test]
    fn layout() {
        let defs = MessageDefs::builtin();
        let bytes = serialize_frame(&heartbeat(), &defs).unwrap();
        assert_eq!(bytes.len(), 21);
        assert_eq!(&bytes[..10], &[0xfd, 9, 0, 0, 0, 1, 1, 0, 0, 0]);
        assert_eq!(parse_frame(&bytes, &defs).unwrap(), heartbeat());
    }

    #[test]
    fn distinguishable_errors() {
        let defs = MessageDefs::builtin();
        let bytes = serialize_frame(&heartbeat(), &defs).unwrap();

        let mut bad = bytes.clone();
        bad[0] = 0xfe;
        assert_eq!(parse_frame(&bad, &defs), Err(LinkError::BadMagic(0xfe)));
        assert!(matches!(parse_frame(&bytes[..20], &defs), Err(LinkError::Truncated { needed: 21, available: 20 })));
        assert!(matches!(parse_frame(&[], &defs), Err(LinkError::Truncated { .. })));
        let mut bad = bytes.clone();
        *bad.last_mut().unwrap() ^= 1;
        assert!(matches!(parse_frame(&bad, &defs), Err(LinkError::ChecksumMismatch { .. })));
        let mut long = bytes.clone();
        long.push(0);
        assert_eq!(parse_frame(&long, &defs), Err(LinkError::TrailingBytes(1)));

        let mut f = heartbeat();
        f.msgid = 9999;
        assert_eq!(serialize_frame(&f, &defs), Err(LinkError::UnknownMessage(9999)));
        let mut f = heartbeat();
        f.payload.push(0);
        assert!(matches!(serialize_frame(&f, &defs), Err(LinkError::PayloadTooLong { max: 9, .. })));
        let mut f = heartbeat();
        f.incompat_flags = FLAG_SIGNED;
        assert_eq!(serialize_frame(&f, &defs), Err(LinkError::SignatureFlagMismatch));
    }

    #[test]
    fn signature_is_carried() {
        let defs = MessageDefs::builtin();
        let mut f = heartbeat();
        f.incompat_flags = FLAG_SIGNED;
        f.signature = Some([7; SIGNATURE_LEN]);
        let bytes = serialize_frame(&f, &defs).unwrap();
        assert_eq!(bytes.len(), 21 + SIGNATURE_LEN);
        assert_eq!(parse_frame(&bytes, &defs).unwrap(), f);
    }
}
