use std::collections::BTreeMap;

use super::LinkError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageDef {
    pub msgid: u32,
    pub name: String,
    pub crc_extra: u8,
    /// Full (untrimmed) payload length, extensions included.
    pub max_len: u8,
}

/// Message definitions keyed by id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MessageDefs(BTreeMap<u32, MessageDef>);

const BUILTIN: &[(u32, &str, u8, u8)] = &[
    (0, "HEARTBEAT", 50, 9),
    (1, "SYS_STATUS", 124, 43),
    (24, "GPS_RAW_INT", 24, 52),
    (30, "ATTITUDE", 39, 28),
    (33, "GLOBAL_POSITION_INT", 104, 28),
    (76, "COMMAND_LONG", 152, 33),
    (110, "FILE_TRANSFER_PROTOCOL", 84, 254),
    (131, "ENCAPSULATED_DATA", 223, 255),
    (253, "STATUSTEXT", 83, 54),
];

impl MessageDefs {
    /// HEARTBEAT plus a handful of common-dialect telemetry messages.
    pub fn builtin() -> Self {
        let mut defs = Self::default();
        for &(msgid, name, crc_extra, max_len) in BUILTIN {
            defs.insert(MessageDef {
                msgid,
                name: name.to_string(),
                crc_extra,
                max_len,
            })
            .expect("builtin table has unique ids");
        }
        defs
    }

    /// Parses `msgid name crc_extra max_len` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, LinkError> {
        let mut defs = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: String| LinkError::Definitions { line: idx + 1, reason };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [msgid, name, crc_extra, max_len] = fields[..] else {
                return Err(err(format!("expected 4 fields, found {}", fields.len())));
            };
            let msgid: u32 = msgid.parse().map_err(|e| err(format!("msgid `{msgid}`: {e}")))?;
            if msgid > 0xff_ffff {
                return Err(err(format!("msgid {msgid} exceeds 24 bits")));
            }
            let crc_extra = crc_extra.parse().map_err(|e| err(format!("crc_extra `{crc_extra}`: {e}")))?;
            let max_len: u8 = max_len.parse().map_err(|e| err(format!("max_len `{max_len}`: {e}")))?;
            if max_len == 0 {
                return Err(err("max_len must be at least 1".into()));
            }
            defs.insert(MessageDef {
                msgid,
                name: name.to_string(),
                crc_extra,
                max_len,
            })
            .map_err(|e| err(e.to_string()))?;
        }
        Ok(defs)
    }

    pub fn insert(&mut self, def: MessageDef) -> Result<(), LinkError> {
        if self.0.contains_key(&def.msgid) {
            return Err(LinkError::DuplicateMessage(def.msgid));
        }
        self.0.insert(def.msgid, def);
        Ok(())
    }

    pub fn get(&self, msgid: u32) -> Result<&MessageDef, LinkError> {
        self.0.get(&msgid).ok_or(LinkError::UnknownMessage(msgid))
    }

    pub fn iter(&self) -> impl Iterator<Item = &MessageDef> {
        self.0.values()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
