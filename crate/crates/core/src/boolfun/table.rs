use crate::error::{domain, Error, Result};
use crate::hexfmt;

/// Largest number of input variables a truth table may have.
pub const MAX_VARS: u32 = 26;

/// A Boolean function on `n` variables stored as a packed bit vector of
/// length `2^n`; bit `i` is the value at the input with integer encoding `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

impl std::fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TruthTable(n={}, weight={})", self.n, self.weight())
    }
}

fn word_count(n: u32) -> usize {
    (1usize << n).div_ceil(64)
}

fn last_word_mask(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

impl TruthTable {
    pub fn zeros(n: u32) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::Size(format!("{n} variables exceeds the limit of {MAX_VARS}")));
        }
        Ok(Self { n, words: vec![0; word_count(n)] })
    }

    pub fn from_fn(n: u32, f: impl Fn(usize) -> bool) -> Result<Self> {
        let mut tt = Self::zeros(n)?;
        for i in 0..tt.len() {
            if f(i) {
                tt.set(i, true);
            }
        }
        Ok(tt)
    }

    /// Builds a table from raw words; bits beyond `2^n` must be clear.
    pub fn from_words(n: u32, words: Vec<u64>) -> Result<Self> {
        let tt = Self::zeros(n)?;
        if words.len() != tt.words.len() {
            return Err(Error::Size(format!("expected {} words for n = {n}, got {}", tt.words.len(), words.len())));
        }
        if words[words.len() - 1] & !last_word_mask(n) != 0 {
            return domain("bits set beyond the end of the table");
        }
        Ok(Self { n, words })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `2^n`.
    pub fn len(&self) -> usize {
        1usize << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        let bit = 1u64 << (i & 63);
        if v {
            self.words[i >> 6] |= bit;
        } else {
            self.words[i >> 6] &= !bit;
        }
    }

    /// Hamming weight.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return domain(format!("size mismatch: {} vs {} variables", self.n, other.n));
        }
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(Self { n: self.n, words })
    }

    /// `g(i) = self(f(i))` for an input map `f` on `[0, 2^n)`.
    pub fn map_inputs(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut out = Self { n: self.n, words: vec![0; self.words.len()] };
        for i in 0..self.len() {
            if self.get(f(i)) {
                out.set(i, true);
            }
        }
        out
    }

    /// Number of bytes in the hex serialization.
    pub fn byte_len(&self) -> usize {
        (self.len() / 8).max(1)
    }

    /// Lowercase hex, bit `i` at byte `i / 8`, position `i % 8`.
    pub fn to_hex(&self) -> String {
        let bytes: Vec<u8> = self.words.iter().flat_map(|w| w.to_le_bytes()).take(self.byte_len()).collect();
        hexfmt::bytes_to_hex(&bytes)
    }

    pub fn from_hex(n: u32, s: &str) -> Result<Self> {
        let mut tt = Self::zeros(n)?;
        let bytes = hexfmt::hex_to_bytes(s)?;
        if bytes.len() != tt.byte_len() {
            return Err(Error::Parse(format!(
                "truth table for n = {n} needs {} hex bytes, got {}",
                tt.byte_len(),
                bytes.len()
            )));
        }
        for (i, chunk) in bytes.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            tt.words[i] = u64::from_le_bytes(buf);
        }
        if tt.words[tt.words.len() - 1] & !last_word_mask(n) != 0 {
            return Err(Error::Parse("bits set beyond the end of the table".into()));
        }
        Ok(tt)
    }

    /// `±1` sign vector `(-1)^{f(x)}`.
    pub fn signs(&self) -> Vec<i32> {
        (0..self.len()).map(|i| if self.get(i) { -1 } else { 1 }).collect()
    }
}
