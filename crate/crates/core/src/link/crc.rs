/// X.25 (CRC-16/MCRF4XX) accumulator: seed 0xFFFF, reflected 0x1021.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct X25(u16);

impl Default for X25 {
    fn default() -> Self {
        Self(0xffff)
    }
}

impl X25 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn update(&mut self, data: &[u8]) {
        for &b in data {
            let mut tmp = b ^ (self.0 as u8);
            tmp ^= tmp << 4;
            let tmp = tmp as u16;
            self.0 = (self.0 >> 8) ^ (tmp << 8) ^ (tmp << 3) ^ (tmp >> 4);
        }
    }

    pub fn value(self) -> u16 {
        self.0
    }
}

/// MAVLink checksum: X.25 over `data` followed by the message's CRC_EXTRA byte.
pub fn crc_x25(data: &[u8], crc_extra: u8) -> u16 {
    let mut crc = X25::new();
    crc.update(data);
    crc.update(&[crc_extra]);
    crc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bitwise reference: reflected polynomial 0x8408.
    fn bitwise(data: &[u8]) -> u16 {
        let mut crc = 0xffffu16;
        for &b in data {
            crc ^= b as u16;
            for _ in 0..8 {
                crc = if crc & 1 == 1 { (crc >> 1) ^ 0x8408 } else { crc >> 1 };
            }
        }
        crc
    }

    #[test]
    fn seed_is_unchanged_on_empty_input() {
        assert_eq!(X25::new().value(), 0xffff);
    }

    #[test]
    fn check_value() {
        // CRC-16/MCRF4XX check value for "123456789".
        let mut crc = X25::new();
        crc.update(b"123456789");
        assert_eq!(crc.value(), 0x6f91);
    }

    #[test]
    fn matches_bitwise_form() {
        let data: Vec<u8> = (0..=255u8).collect();
        for len in [0, 1, 7, 64, 256] {
            let mut crc = X25::new();
            crc.update(&data[..len]);
            assert_eq!(crc.value(), bitwise(&data[..len]));
        }
        assert_eq!(crc_x25(&data, 50), bitwise(&[&data[..], &[50]].concat()));
    }
}
