//! ChaCha20 block function and stream cipher (IETF variant: 32-bit counter,
//! 96-bit nonce).

use super::{CipherError, CipherKey};

const CONSTANTS: [u32; 4] = [0x6170_7865, 0x3320_646e, 0x7962_2d32, 0x6b20_6574];

/// The 4x4 grid of 32-bit words: constants (0..4), key (4..12), counter
/// (12) and nonce (13..16).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChaChaState(pub [u32; 16]);

impl ChaChaState {
    pub fn new(key: &[u8; 32], counter: u32, nonce: &[u8; 12]) -> Self {
        let mut s = [0u32; 16];
        s[..4].copy_from_slice(&CONSTANTS);
        for (i, c) in key.chunks_exact(4).enumerate() {
            s[4 + i] = u32::from_le_bytes(c.try_into().unwrap());
        }
        s[12] = counter;
        for (i, c) in nonce.chunks_exact(4).enumerate() {
            s[13 + i] = u32::from_le_bytes(c.try_into().unwrap());
        }
        Self(s)
    }

    #[inline(always)]
    pub fn quarter_round(&mut self, (a, b, c, d): (usize, usize, usize, usize)) {
        let s = &mut self.0;
        s[a] = s[a].wrapping_add(s[b]);
        s[d] = (s[d] ^ s[a]).rotate_left(16);
        s[c] = s[c].wrapping_add(s[d]);
        s[b] = (s[b] ^ s[c]).rotate_left(12);
        s[a] = s[a].wrapping_add(s[b]);
        s[d] = (s[d] ^ s[a]).rotate_left(8);
        s[c] = s[c].wrapping_add(s[d]);
        s[b] = (s[b] ^ s[c]).rotate_left(7);
    }

    fn double_round(&mut self) {
        self.quarter_round((0, 4, 8, 12));
        self.quarter_round((1, 5, 9, 13));
        self.quarter_round((2, 6, 10, 14));
        self.quarter_round((3, 7, 11, 15));
        self.quarter_round((0, 5, 10, 15));
        self.quarter_round((1, 6, 11, 12));
        self.quarter_round((2, 7, 8, 13));
        self.quarter_round((3, 4, 9, 14));
    }

    /// Runs the 20 rounds and returns the serialized `working + initial` state.
    pub fn keystream(&self) -> [u8; 64] {
        let mut working = *self;
        for _ in 0..10 {
            working.double_round();
        }
        let mut out = [0u8; 64];
        for (i, chunk) in out.chunks_exact_mut(4).enumerate() {
            chunk.copy_from_slice(&working.0[i].wrapping_add(self.0[i]).to_le_bytes());
        }
        out
    }
}

pub fn chacha20_block(key: &[u8; 32], nonce: &[u8; 12], counter: u32) -> [u8; 64] {
    ChaChaState::new(key, counter, nonce).keystream()
}

/// XORs `data` with the keystream starting at block `initial_counter`.
/// The 32-bit block counter wraps.
pub fn chacha20_xcrypt_in_place(key: &[u8; 32], nonce: &[u8; 12], initial_counter: u32, data: &mut [u8]) {
    let mut state = ChaChaState::new(key, initial_counter, nonce);
    for chunk in data.chunks_mut(64) {
        let ks = state.keystream();
        for (d, k) in chunk.iter_mut().zip(ks) {
            *d ^= k;
        }
        state.0[12] = state.0[12].wrapping_add(1);
    }
}

pub fn chacha20_xcrypt(
    key: &CipherKey,
    nonce: &[u8; 12],
    initial_counter: u32,
    data: &[u8],
) -> Result<Vec<u8>, CipherError> {
    let key = key.expect_len::<32>("chacha20")?;
    let mut out = data.to_vec();
    chacha20_xcrypt_in_place(&key, nonce, initial_counter, &mut out);
    Ok(out)
}
