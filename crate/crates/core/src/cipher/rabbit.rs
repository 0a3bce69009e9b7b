//! Rabbit stream cipher: 513-bit state of eight state words, eight counters
//! and one counter carry bit.

use super::{CipherError, CipherKey};

const A: [u32; 8] = [
    0x4D34_D34D,
    0xD34D_34D3,
    0x34D3_4D34,
    0x4D34_D34D,
    0xD34D_34D3,
    0x34D3_4D34,
    0x4D34_D34D,
    0xD34D_34D3,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RabbitState {
    pub x: [u32; 8],
    pub c: [u32; 8],
    /// Counter carry bit, always 0 or 1.
    pub carry: u32,
}

/// `g(u, v)`: square the 32-bit sum and fold the high half onto the low half.
#[inline]
pub fn g_function(x: u32, c: u32) -> u32 {
    let t = u64::from(x.wrapping_add(c));
    let sq = t * t;
    (sq ^ (sq >> 32)) as u32
}

impl RabbitState {
    /// Key setup from a 16-byte key; subkey `k_j` is bits `16j+15..16j` of
    /// the key read as a little-endian integer.
    pub fn key_setup(key: &[u8; 16]) -> Self {
        let k: [u32; 8] =
            std::array::from_fn(|j| u32::from(u16::from_le_bytes([key[2 * j], key[2 * j + 1]])));
        let cat = |hi: usize, lo: usize| (k[hi % 8] << 16) | k[lo % 8];
        let mut x = [0u32; 8];
        let mut c = [0u32; 8];
        for j in 0..8 {
            if j % 2 == 0 {
                x[j] = cat(j + 1, j);
                c[j] = cat(j + 4, j + 5);
            } else {
                x[j] = cat(j + 5, j + 4);
                c[j] = cat(j, j + 1);
            }
        }
        let mut state = Self { x, c, carry: 0 };
        for _ in 0..4 {
            state.next_state();
        }
        for j in 0..8 {
            state.c[j] ^= state.x[(j + 4) % 8];
        }
        state
    }

    /// IV setup on top of a key-setup state (64-bit IV, little-endian words).
    pub fn with_iv(&self, iv: &[u8; 8]) -> Self {
        let i0 = u32::from_le_bytes(iv[..4].try_into().unwrap());
        let i2 = u32::from_le_bytes(iv[4..].try_into().unwrap());
        let i1 = (i0 >> 16) | (i2 & 0xFFFF_0000);
        let i3 = (i2 << 16) | (i0 & 0x0000_FFFF);
        let mut state = *self;
        for j in 0..8 {
            state.c[j] ^= [i0, i1, i2, i3][j % 4];
        }
        for _ in 0..4 {
            state.next_state();
        }
        state
    }

    /// Counter update with carry chain, then the coupled non-linear update.
    pub fn next_state(&mut self) {
        for (c, a) in self.c.iter_mut().zip(A) {
            let (sum, o1) = c.overflowing_add(a);
            let (sum, o2) = sum.overflowing_add(self.carry);
            *c = sum;
            self.carry = u32::from(o1 | o2);
        }
        let g: [u32; 8] = std::array::from_fn(|j| g_function(self.x[j], self.c[j]));
        for j in 0..8 {
            let g1 = g[(j + 7) % 8];
            let g2 = g[(j + 6) % 8];
            self.x[j] = if j % 2 == 0 {
                g[j].wrapping_add(g1.rotate_left(16)).wrapping_add(g2.rotate_left(16))
            } else {
                g[j].wrapping_add(g1.rotate_left(8)).wrapping_add(g2)
            };
        }
    }

    /// 128 bits extracted from the current state words.
    pub fn extract(&self) -> [u8; 16] {
        let x = &self.x;
        let mut out = [0u8; 16];
        for j in 0..4 {
            let word = x[2 * j] ^ (x[(2 * j + 5) % 8] >> 16) ^ (x[(2 * j + 3) % 8] << 16);
            out[4 * j..4 * j + 4].copy_from_slice(&word.to_le_bytes());
        }
        out
    }

    /// Advances one iteration and returns the next keystream block.
    pub fn keystream_block(&mut self) -> [u8; 16] {
        self.next_state();
        self.extract()
    }

    pub fn xor_keystream(&mut self, data: &mut [u8]) {
        for chunk in data.chunks_mut(16) {
            let ks = self.keystream_block();
            for (d, k) in chunk.iter_mut().zip(ks) {
                *d ^= k;
            }
        }
    }
}

/// Advances `state` and returns the new state and its keystream block.
pub fn rabbit_keystream_block(state: RabbitState) -> (RabbitState, [u8; 16]) {
    let mut next = state;
    let block = next.keystream_block();
    (next, block)
}

pub fn rabbit_key_setup(key: &CipherKey) -> Result<RabbitState, CipherError> {
    Ok(RabbitState::key_setup(&key.expect_len::<16>("rabbit")?))
}

/// Key-only Rabbit (no IV): XOR with the keystream from a fresh key setup.
pub fn rabbit_xcrypt(key: &CipherKey, data: &[u8]) -> Result<Vec<u8>, CipherError> {
    let mut state = rabbit_key_setup(key)?;
    let mut out = data.to_vec();
    state.xor_keystream(&mut out);
    Ok(out)
}
