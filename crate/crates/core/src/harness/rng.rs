use crate::cipher::chacha20::chacha20_block;

/// Deterministic byte generator: the ChaCha20 keystream under a key holding
/// the little-endian seed, zero nonce, block counter from 0.
///
/// Output depends only on the seed, so corpora are reproducible across
/// machines. Block `i` can be fetched directly with [`SeededStream::block`].
#[derive(Debug, Clone)]
pub struct SeededStream {
    key: [u8; 32],
    counter: u32,
    buf: [u8; 64],
    pos: usize,
}

impl SeededStream {
    pub fn new(seed: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        Self {
            key,
            counter: 0,
            buf: [0; 64],
            pos: 64,
        }
    }

    /// Keystream block `index`, independent of the cursor.
    pub fn block(&self, index: u32) -> [u8; 64] {
        chacha20_block(&self.key, &[0; 12], index)
    }

    pub fn fill_bytes(&mut self, out: &mut [u8]) {
        for b in out {
            if self.pos == 64 {
                self.buf = self.block(self.counter);
                self.counter = self.counter.wrapping_add(1);
                self.pos = 0;
            }
            *b = self.buf[self.pos];
            self.pos += 1;
        }
    }

    pub fn next_u8(&mut self) -> u8 {
        let mut b = [0u8; 1];
        self.fill_bytes(&mut b);
        b[0]
    }

    pub fn next_u32(&mut self) -> u32 {
        let mut b = [0u8; 4];
        self.fill_bytes(&mut b);
        u32::from_le_bytes(b)
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut b = [0u8; 8];
        self.fill_bytes(&mut b);
        u64::from_le_bytes(b)
    }

    pub fn bytes<const N: usize>(&mut self) -> [u8; N] {
        let mut b = [0u8; N];
        self.fill_bytes(&mut b);
        b
    }

    /// Uniform value in `0..bound` by rejection sampling.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}
