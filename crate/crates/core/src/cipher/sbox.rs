use super::{aes, CipherError};

/// A byte substitution: 256 entries forming a permutation of `0..=255`.
#[derive(Clone, PartialEq, Eq)]
pub struct SubstitutionTable {
    entries: [u8; 256],
}

impl SubstitutionTable {
    /// Validates that `entries` is a bijection on byte values.
    pub fn new(entries: [u8; 256]) -> Result<Self, CipherError> {
        let mut seen = [false; 256];
        for &e in &entries {
            if std::mem::replace(&mut seen[e as usize], true) {
                return Err(CipherError::NotAPermutation(e));
            }
        }
        Ok(Self { entries })
    }

    /// The AES forward S-box.
    pub fn aes() -> Self {
        Self { entries: aes::SBOX }
    }

    #[inline]
    pub fn apply(&self, byte: u8) -> u8 {
        self.entries[byte as usize]
    }

    /// Substitutes each byte of `word` in place.
    #[inline]
    pub fn apply_u32(&self, word: u32) -> u32 {
        u32::from_le_bytes(word.to_le_bytes().map(|b| self.apply(b)))
    }

    pub fn entries(&self) -> &[u8; 256] {
        &self.entries
    }
}

impl Default for SubstitutionTable {
    fn default() -> Self {
        Self::aes()
    }
}

impl std::fmt::Debug for SubstitutionTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubstitutionTable")
            .field("first", &&self.entries[..4])
            .finish_non_exhaustive()
    }
}
