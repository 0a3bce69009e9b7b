//! Counter mode: turns a 128-bit block permutation into a keystream.

use super::CounterBlock128;

/// A keyed 128-bit block permutation (encryption direction only).
pub trait BlockCipher128 {
    fn encrypt_block(&self, block: &[u8; 16]) -> [u8; 16];
}

impl<F: Fn(&[u8; 16]) -> [u8; 16]> BlockCipher128 for F {
    fn encrypt_block(&self, block: &[u8; 16]) -> [u8; 16] {
        self(block)
    }
}

/// XORs `data` in place with `E(iv), E(iv + 1), ...`, truncating the last block.
///
/// No padding; the output length equals the input length and the operation is
/// its own inverse for a fixed key and counter.
pub fn ctr_xcrypt<C: BlockCipher128 + ?Sized>(cipher: &C, iv: &CounterBlock128, data: &mut [u8]) {
    let mut counter = *iv;
    for chunk in data.chunks_mut(16) {
        let ks = cipher.encrypt_block(&counter.0);
        for (d, k) in chunk.iter_mut().zip(ks) {
            *d ^= k;
        }
        counter.increment();
    }
}
