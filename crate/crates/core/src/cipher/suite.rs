use std::fmt;
use std::str::FromStr;

use super::aes::Aes128;
use super::chacha20::chacha20_xcrypt_in_place;
use super::mavshield::MavShield;
use super::rabbit::RabbitState;
use super::speck::{Speck128, SpeckVariant};
use super::{ctr_xcrypt, CipherError, CipherKey, CounterBlock128, Nonce64};

/// The cipher suites a link can be configured with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CipherSuite {
    None,
    MavShield,
    Speck128_128,
    Speck128_192,
    Speck128_256,
    Aes128,
    ChaCha20,
    Rabbit,
}

impl CipherSuite {
    pub const ALL: [CipherSuite; 8] = [
        CipherSuite::None,
        CipherSuite::MavShield,
        CipherSuite::Speck128_128,
        CipherSuite::Speck128_192,
        CipherSuite::Speck128_256,
        CipherSuite::Aes128,
        CipherSuite::ChaCha20,
        CipherSuite::Rabbit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CipherSuite::None => "none",
            CipherSuite::MavShield => "mavshield",
            CipherSuite::Speck128_128 => "speck128_128",
            CipherSuite::Speck128_192 => "speck128_192",
            CipherSuite::Speck128_256 => "speck128_256",
            CipherSuite::Aes128 => "aes128",
            CipherSuite::ChaCha20 => "chacha20",
            CipherSuite::Rabbit => "rabbit",
        }
    }

    /// Required key length in bytes.
    pub fn key_len(self) -> usize {
        match self {
            CipherSuite::None => 0,
            CipherSuite::MavShield
            | CipherSuite::Speck128_128
            | CipherSuite::Aes128
            | CipherSuite::Rabbit => 16,
            CipherSuite::Speck128_192 => 24,
            CipherSuite::Speck128_256 | CipherSuite::ChaCha20 => 32,
        }
    }
}

impl fmt::Display for CipherSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CipherSuite {
    type Err = CipherError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        CipherSuite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or(CipherError::UnknownSuite(s))
    }
}

/// A length-preserving payload cipher keyed once and driven by a per-message
/// 128-bit IV. `xcrypt` is an involution for a fixed IV.
pub trait PayloadCipher: Send + Sync {
    fn suite(&self) -> CipherSuite;
    fn xcrypt(&self, iv: &CounterBlock128, data: &mut [u8]);
}

struct Plaintext;

impl PayloadCipher for Plaintext {
    fn suite(&self) -> CipherSuite {
        CipherSuite::None
    }

    fn xcrypt(&self, _iv: &CounterBlock128, _data: &mut [u8]) {}
}

struct Ctr<C> {
    suite: CipherSuite,
    cipher: C,
}

impl<C: super::BlockCipher128 + Send + Sync> PayloadCipher for Ctr<C> {
    fn suite(&self) -> CipherSuite {
        self.suite
    }

    fn xcrypt(&self, iv: &CounterBlock128, data: &mut [u8]) {
        ctr_xcrypt(&self.cipher, iv, data);
    }
}

/// ChaCha20 keyed with the 256-bit key; the IV supplies the initial block
/// counter (bytes 0..4, little endian) and the nonce (bytes 4..16).
struct ChaChaCipher([u8; 32]);

impl PayloadCipher for ChaChaCipher {
    fn suite(&self) -> CipherSuite {
        CipherSuite::ChaCha20
    }

    fn xcrypt(&self, iv: &CounterBlock128, data: &mut [u8]) {
        let counter = u32::from_le_bytes(iv.0[..4].try_into().unwrap());
        let nonce: [u8; 12] = iv.0[4..].try_into().unwrap();
        chacha20_xcrypt_in_place(&self.0, &nonce, counter, data);
    }
}

/// Rabbit with IV setup; the 64-bit Rabbit IV is the XOR of the two IV halves.
struct RabbitCipher(RabbitState);

impl PayloadCipher for RabbitCipher {
    fn suite(&self) -> CipherSuite {
        CipherSuite::Rabbit
    }

    fn xcrypt(&self, iv: &CounterBlock128, data: &mut [u8]) {
        let folded: [u8; 8] = std::array::from_fn(|i| iv.0[i] ^ iv.0[i + 8]);
        self.0.with_iv(&folded).xor_keystream(data);
    }
}

/// Builds a keyed payload cipher. `nonce` seeds the MAVShield key schedule
/// and is ignored by the other suites.
pub fn build_cipher(
    suite: CipherSuite,
    key: &CipherKey,
    nonce: Nonce64,
) -> Result<Box<dyn PayloadCipher>, CipherError> {
    let speck = |variant| -> Result<Box<dyn PayloadCipher>, CipherError> {
        Ok(Box::new(Ctr {
            suite,
            cipher: Speck128::new(variant, key)?,
        }))
    };
    Ok(match suite {
        CipherSuite::None => Box::new(Plaintext),
        CipherSuite::MavShield => Box::new(Ctr {
            suite,
            cipher: MavShield::new(key, nonce)?,
        }),
        CipherSuite::Speck128_128 => speck(SpeckVariant::SPECK128_128)?,
        CipherSuite::Speck128_192 => speck(SpeckVariant::SPECK128_192)?,
        CipherSuite::Speck128_256 => speck(SpeckVariant::SPECK128_256)?,
        CipherSuite::Aes128 => Box::new(Ctr {
            suite,
            cipher: Aes128::from_key(key)?,
        }),
        CipherSuite::ChaCha20 => Box::new(ChaChaCipher(key.expect_len::<32>("chacha20")?)),
        CipherSuite::Rabbit => Box::new(RabbitCipher(RabbitState::key_setup(
            &key.expect_len::<16>("rabbit")?,
        ))),
    })
}
