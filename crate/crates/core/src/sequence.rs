use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::Hasher;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{least_rotation_start, parse_bits};

/// Whether windows wrap around the end of the sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Cyclic,
    Acyclic,
}

/// A binary sequence read either circularly or as a plain string.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicSequence {
    bits: Vec<u8>,
    mode: Mode,
}

impl CyclicSequence {
    pub fn new(bits: Vec<u8>, mode: Mode) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBit(char::from(b'0'.wrapping_add(b))));
        }
        Ok(Self { bits, mode })
    }

    pub fn cyclic(bits: Vec<u8>) -> Result<Self> {
        Self::new(bits, Mode::Cyclic)
    }

    pub fn acyclic(bits: Vec<u8>) -> Result<Self> {
        Self::new(bits, Mode::Acyclic)
    }

    pub(crate) fn from_vec_unchecked(bits: Vec<u8>, mode: Mode) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Self { bits, mode }
    }

    pub fn parse(s: &str, mode: Mode) -> Result<Self> {
        Ok(Self {
            bits: parse_bits(s)?,
            mode,
        })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.bits
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_cyclic(&self) -> bool {
        self.mode == Mode::Cyclic
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn rotated_left(&self, k: usize) -> Self {
        let mut bits = self.bits.clone();
        if !bits.is_empty() {
            bits.rotate_left(k % self.bits.len());
        }
        Self {
            bits,
            mode: self.mode,
        }
    }

    pub fn reversed(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.reverse();
        Self {
            bits,
            mode: self.mode,
        }
    }

    /// The least rotation, used as a canonical form for cyclic comparison.
    pub fn canonical_rotation(&self) -> Self {
        self.rotated_left(least_rotation_start(&self.bits))
    }
}

impl fmt::Display for CyclicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::word::bits_to_string(&self.bits))
    }
}

impl fmt::Debug for CyclicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicSequence({:?}, {self})", self.mode)
    }
}

impl FromStr for CyclicSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, Mode::Cyclic)
    }
}

/// Consumer of generated bits, fed sequentially in emission order.
pub trait BitSink {
    fn push_bit(&mut self, bit: u8);

    fn push_bits(&mut self, bits: &[u8]) {
        for &b in bits {
            self.push_bit(b);
        }
    }
}

impl BitSink for Vec<u8> {
    fn push_bit(&mut self, bit: u8) {
        self.push(bit);
    }

    fn push_bits(&mut self, bits: &[u8]) {
        self.extend_from_slice(bits);
    }
}

impl<S: BitSink + ?Sized> BitSink for &mut S {
    fn push_bit(&mut self, bit: u8) {
        (**self).push_bit(bit);
    }

    fn push_bits(&mut self, bits: &[u8]) {
        (**self).push_bits(bits);
    }
}

/// Counts bits without storing them.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct CountingSink {
    pub bits: u64,
    pub ones: u64,
}

impl BitSink for CountingSink {
    fn push_bit(&mut self, bit: u8) {
        self.bits += 1;
        self.ones += u64::from(bit);
    }
}

/// Folds the bit stream into a 64-bit digest so long outputs can be
/// compared without keeping them.
#[derive(Default)]
pub struct HashSink {
    hasher: DefaultHasher,
    len: u64,
}

impl HashSink {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn digest(&self) -> u64 {
        self.hasher.finish()
    }
}

impl BitSink for HashSink {
    fn push_bit(&mut self, bit: u8) {
        self.hasher.write_u8(bit);
        self.len += 1;
    }
}

/// Adapts a closure into a sink.
pub struct FnSink<F>(pub F);

impl<F: FnMut(u8)> BitSink for FnSink<F> {
    fn push_bit(&mut self, bit: u8) {
        (self.0)(bit);
    }
}
