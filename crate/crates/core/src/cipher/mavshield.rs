//! MAVShield: a 10-round, two-lane Speck-style block cipher with a
//! nonce-driven, S-box-filtered key schedule.
//!
//! A 128-bit block is four 32-bit words `CT3 CT2 CT1 CT0` (CT3 from the first
//! four bytes, each word little endian). The upper lane `(CT3, CT2)` and the
//! lower lane `(CT1, CT0)` are each a 64-bit Speck structure; they never mix.
//! Every round derives `(K_u, K_l)` from one 64-bit schedule entry and feeds
//! `K_u` to the upper lane and `K_l` to the lower lane.
//!
//! The key schedule carries one 64-bit state `C` seeded with the nonce. Round
//! `i` rotates it right by `i`, complements it and filters it through
//! [`round_value_generation`]; the two results key one round function on each
//! half of the evolving 128-bit key, and entry `i` is the updated lower half
//! `key1 || key0`.
//!
//! A nonce whose 32-bit halves are equal keeps them equal under rotation and
//! complement, so every round value it produces is zero.

use super::speck::SpeckVariant;
use super::{BlockCipher128, CipherError, CipherKey, Nonce64, SubstitutionTable};

/// Number of rounds and schedule entries.
pub const ROUNDS: usize = 10;

const ALPHA: u32 = SpeckVariant::SPECK64_128.alpha;
const BETA: u32 = SpeckVariant::SPECK64_128.beta;

macro_rules! lane_cipher {
    ($word:ty, $double:ty, $alpha:expr, $beta:expr) => {
        #[inline]
        pub fn round_forward(a: $word, b: $word, k: $word) -> ($word, $word) {
            let a = a.rotate_right($alpha).wrapping_add(b) ^ k;
            let b = b.rotate_left($beta) ^ a;
            (a, b)
        }

        #[inline]
        pub fn round_inverse(a: $word, b: $word, k: $word) -> ($word, $word) {
            let b = (b ^ a).rotate_right($beta);
            let a = (a ^ k).wrapping_sub(b).rotate_left($alpha);
            (a, b)
        }

        #[inline]
        fn substitute(w: $word, table: &SubstitutionTable) -> $word {
            <$word>::from_le_bytes(w.to_le_bytes().map(|b| table.apply(b)))
        }

        /// Splits `c` into upper/lower words and returns
        /// `(S(upper) ^ S(lower), upper ^ lower)`.
        #[inline]
        pub fn round_value_generation(c: $double, table: &SubstitutionTable) -> ($word, $word) {
            let upper = (c >> <$word>::BITS) as $word;
            let lower = c as $word;
            let lower_out = upper ^ lower;
            let upper_out = substitute(upper, table) ^ substitute(lower, table);
            (upper_out, lower_out)
        }

        /// Key words are `[key3, key2, key1, key0]`.
        pub fn schedule_words(
            key: [$word; 4],
            nonce: $double,
            table: &SubstitutionTable,
        ) -> [$double; ROUNDS] {
            let [mut key3, mut key2, mut key1, mut key0] = key;
            let mut c = nonce;
            let mut schedule = [0; ROUNDS];
            for (i, entry) in schedule.iter_mut().enumerate() {
                c = !c.rotate_right(i as u32);
                let (cu, cl) = round_value_generation(c, table);
                (key3, key2) = round_forward(key3, key2, cu);
                (key1, key0) = round_forward(key1, key0, cl);
                *entry = ((key1 as $double) << <$word>::BITS) | key0 as $double;
            }
            schedule
        }

        /// Block words are `[ct3, ct2, ct1, ct0]`.
        pub fn encrypt_words(
            block: [$word; 4],
            schedule: &[$double; ROUNDS],
            table: &SubstitutionTable,
        ) -> [$word; 4] {
            let [mut ct3, mut ct2, mut ct1, mut ct0] = block;
            for &entry in schedule {
                let (ku, kl) = round_value_generation(entry, table);
                (ct3, ct2) = round_forward(ct3, ct2, ku);
                (ct1, ct0) = round_forward(ct1, ct0, kl);
            }
            [ct3, ct2, ct1, ct0]
        }

        pub fn decrypt_words(
            block: [$word; 4],
            schedule: &[$double; ROUNDS],
            table: &SubstitutionTable,
        ) -> [$word; 4] {
            let [mut ct3, mut ct2, mut ct1, mut ct0] = block;
            for &entry in schedule.iter().rev() {
                let (ku, kl) = round_value_generation(entry, table);
                (ct3, ct2) = round_inverse(ct3, ct2, ku);
                (ct1, ct0) = round_inverse(ct1, ct0, kl);
            }
            [ct3, ct2, ct1, ct0]
        }
    };
}

mod lanes {
    use super::*;
    lane_cipher!(u32, u64, ALPHA, BETA);
}

pub use lanes::{round_forward, round_inverse, round_value_generation};

/// Reduced MAVShield over 8-bit words: 32-bit blocks, 16-bit schedule
/// entries, otherwise the same construction. Small enough to enumerate.
#[cfg(feature = "toy")]
pub mod toy {
    use super::*;
    lane_cipher!(u8, u16, 7, 2);
}

/// The ten 64-bit round-key entries derived from `(key, nonce, table)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MavShieldSchedule {
    pub round_keys: [u64; ROUNDS],
    pub nonce: Nonce64,
}

pub fn mavshield_key_schedule(
    key: &CipherKey,
    nonce: Nonce64,
    table: &SubstitutionTable,
) -> Result<MavShieldSchedule, CipherError> {
    let key = key.expect_len::<16>("mavshield")?;
    Ok(MavShieldSchedule {
        round_keys: lanes::schedule_words(to_words(&key), nonce.0, table),
        nonce,
    })
}

pub fn mavshield_encrypt_block(
    block: &[u8; 16],
    schedule: &MavShieldSchedule,
    table: &SubstitutionTable,
) -> [u8; 16] {
    from_words(lanes::encrypt_words(to_words(block), &schedule.round_keys, table))
}

pub fn mavshield_decrypt_block(
    block: &[u8; 16],
    schedule: &MavShieldSchedule,
    table: &SubstitutionTable,
) -> [u8; 16] {
    from_words(lanes::decrypt_words(to_words(block), &schedule.round_keys, table))
}

#[inline]
fn to_words(block: &[u8; 16]) -> [u32; 4] {
    std::array::from_fn(|i| u32::from_le_bytes(block[4 * i..4 * i + 4].try_into().unwrap()))
}

#[inline]
fn from_words(words: [u32; 4]) -> [u8; 16] {
    let mut out = [0u8; 16];
    for (chunk, w) in out.chunks_exact_mut(4).zip(words) {
        chunk.copy_from_slice(&w.to_le_bytes());
    }
    out
}

/// Keyed MAVShield instance. Per-round `(K_u, K_l)` pairs are derived once
/// at construction; the result is identical to [`mavshield_encrypt_block`].
#[derive(Debug, Clone)]
pub struct MavShield {
    schedule: MavShieldSchedule,
    table: SubstitutionTable,
    round_values: [(u32, u32); ROUNDS],
}

impl MavShield {
    pub fn new(key: &CipherKey, nonce: Nonce64) -> Result<Self, CipherError> {
        Self::with_table(key, nonce, SubstitutionTable::aes())
    }

    pub fn with_table(
        key: &CipherKey,
        nonce: Nonce64,
        table: SubstitutionTable,
    ) -> Result<Self, CipherError> {
        let schedule = mavshield_key_schedule(key, nonce, &table)?;
        let round_values = schedule
            .round_keys
            .map(|entry| round_value_generation(entry, &table));
        Ok(Self {
            schedule,
            table,
            round_values,
        })
    }

    pub fn schedule(&self) -> &MavShieldSchedule {
        &self.schedule
    }

    pub fn table(&self) -> &SubstitutionTable {
        &self.table
    }

    pub fn encrypt(&self, block: &[u8; 16]) -> [u8; 16] {
        let [mut ct3, mut ct2, mut ct1, mut ct0] = to_words(block);
        for &(ku, kl) in &self.round_values {
            (ct3, ct2) = round_forward(ct3, ct2, ku);
            (ct1, ct0) = round_forward(ct1, ct0, kl);
        }
        from_words([ct3, ct2, ct1, ct0])
    }

    pub fn decrypt(&self, block: &[u8; 16]) -> [u8; 16] {
        let [mut ct3, mut ct2, mut ct1, mut ct0] = to_words(block);
        for &(ku, kl) in self.round_values.iter().rev() {
            (ct3, ct2) = round_inverse(ct3, ct2, ku);
            (ct1, ct0) = round_inverse(ct1, ct0, kl);
        }
        from_words([ct3, ct2, ct1, ct0])
    }
}

impl BlockCipher128 for MavShield {
    fn encrypt_block(&self, block: &[u8; 16]) -> [u8; 16] {
        self.encrypt(block)
    }
}
