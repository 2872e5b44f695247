//! Brute-force checks on candidate sequences.
//!
//! Windows of order up to 128 are packed into a `u128` key (forward and
//! reversed, maintained by rolling updates); longer orders fall back to
//! byte-vector keys.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use crate::bounds::{lower_bound, LowerBoundMethod};
use crate::error::{Error, Result};
use crate::sequence::{CyclicSequence, Mode};
use crate::successor::in_s;
use crate::word::BinaryWord;

/// The first reason a sequence fails to be orientable. Offsets are 0-based
/// window start positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Palindrome { offset: usize, window: BinaryWord },
    /// The same window read forwards twice.
    Repeat { first: usize, second: usize, window: BinaryWord },
    /// The window at `second` is the reversal of the window at `first`.
    ReverseRepeat { first: usize, second: usize, window: BinaryWord },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Palindrome { offset, window } => {
                write!(f, "palindromic window {window} at offset {offset}")
            }
            Violation::Repeat { first, second, window } => {
                write!(f, "window {window} occurs at offsets {first} and {second}")
            }
            Violation::ReverseRepeat { first, second, window } => write!(
                f,
                "window {window} at offset {second} is the reversal of the window at offset {first}"
            ),
        }
    }
}

fn check_args(seq: &CyclicSequence, n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "windows must have length at least 2",
        });
    }
    let m = seq.len();
    if m < n {
        return Err(Error::TooShort { len: m, n });
    }
    Ok(match seq.mode() {
        Mode::Cyclic => m,
        Mode::Acyclic => m - n + 1,
    })
}

fn bit_at(seq: &CyclicSequence, i: usize) -> u8 {
    let bits = seq.bits();
    bits[i % bits.len()]
}

fn window_at(seq: &CyclicSequence, start: usize, n: usize) -> BinaryWord {
    BinaryWord::from_vec_unchecked((start..start + n).map(|i| bit_at(seq, i)).collect())
}

/// Forward and reversed keys of each window in turn.
trait Windows {
    type Key: Hash + Eq + Copy;
    fn next(&mut self) -> (Self::Key, Self::Key);
}

struct Packed<'a> {
    seq: &'a CyclicSequence,
    n: usize,
    pos: usize,
    fwd: u128,
    rev: u128,
    mask: u128,
}

impl<'a> Packed<'a> {
    fn new(seq: &'a CyclicSequence, n: usize) -> Self {
        let mask = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        let mut p = Self { seq, n, pos: 0, fwd: 0, rev: 0, mask };
        for _ in 0..n - 1 {
            p.push();
        }
        p
    }

    fn push(&mut self) {
        let b = u128::from(bit_at(self.seq, self.pos));
        self.fwd = ((self.fwd << 1) | b) & self.mask;
        self.rev = (self.rev >> 1) | (b << (self.n - 1));
        self.pos += 1;
    }
}

impl Windows for Packed<'_> {
    type Key = u128;

    fn next(&mut self) -> (u128, u128) {
        self.push();
        (self.fwd, self.rev)
    }
}

/// Byte-vector keys, interned to indices so the scan stays generic.
struct Spelled<'a> {
    seq: &'a CyclicSequence,
    n: usize,
    pos: usize,
    ids: HashMap<Vec<u8>, usize>,
}

impl Spelled<'_> {
    fn intern(&mut self, w: Vec<u8>) -> usize {
        let next = self.ids.len();
        *self.ids.entry(w).or_insert(next)
    }
}

impl Windows for Spelled<'_> {
    type Key = usize;

    fn next(&mut self) -> (usize, usize) {
        let w: Vec<u8> = (self.pos..self.pos + self.n)
            .map(|i| bit_at(self.seq, i))
            .collect();
        self.pos += 1;
        let r: Vec<u8> = w.iter().rev().copied().collect();
        (self.intern(w), self.intern(r))
    }
}

fn scan<W: Windows>(mut windows: W, count: usize, seq: &CyclicSequence, n: usize) -> Option<Violation> {
    // key -> (offset, seen as reversal)
    let mut seen: HashMap<W::Key, (usize, bool)> = HashMap::with_capacity(2 * count);
    for i in 0..count {
        let (f, r) = windows.next();
        if f == r {
            return Some(Violation::Palindrome { offset: i, window: window_at(seq, i, n) });
        }
        if let Some(&(first, reversed)) = seen.get(&f) {
            let window = window_at(seq, i, n);
            return Some(if reversed {
                Violation::ReverseRepeat { first, second: i, window }
            } else {
                Violation::Repeat { first, second: i, window }
            });
        }
        seen.insert(f, (i, false));
        seen.insert(r, (i, true));
    }
    None
}

/// First orientability violation, or `None` if `seq` is an orientable
/// sequence of order `n` in its mode.
pub fn check_orientable(seq: &CyclicSequence, n: usize) -> Result<Option<Violation>> {
    let count = check_args(seq, n)?;
    Ok(if n <= 128 {
        scan(Packed::new(seq, n), count, seq, n)
    } else {
        let s = Spelled { seq, n, pos: 0, ids: HashMap::new() };
        scan(s, count, seq, n)
    })
}

pub fn is_orientable(seq: &CyclicSequence, n: usize) -> Result<bool> {
    Ok(check_orientable(seq, n)?.is_none())
}

/// Distinct forward windows in order of first occurrence, plus the offsets
/// of the first repeated window if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSet {
    pub windows: Vec<BinaryWord>,
    pub first_duplicate: Option<(usize, usize)>,
}

impl WindowSet {
    pub fn has_duplicates(&self) -> bool {
        self.first_duplicate.is_some()
    }
}

pub fn window_multiset(seq: &CyclicSequence, n: usize) -> Result<WindowSet> {
    let count = check_args(seq, n)?;
    let mut offsets: HashMap<BinaryWord, usize> = HashMap::new();
    let mut windows = Vec::new();
    let mut first_duplicate = None;
    for i in 0..count {
        let w = window_at(seq, i, n);
        match offsets.get(&w) {
            Some(&j) => {
                first_duplicate.get_or_insert((j, i));
            }
            None => {
                offsets.insert(w.clone(), i);
                windows.push(w);
            }
        }
    }
    Ok(WindowSet { windows, first_duplicate })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverageReport {
    Covered,
    LengthMismatch { expected: u128, actual: usize },
    /// Offset of the first window outside S(n) or seen twice.
    NotCovered { offset: usize, window: BinaryWord },
}

impl CoverageReport {
    pub fn is_covered(&self) -> bool {
        matches!(self, CoverageReport::Covered)
    }
}

impl fmt::Display for CoverageReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverageReport::Covered => f.write_str("covers S(n)"),
            CoverageReport::LengthMismatch { expected, actual } => {
                write!(f, "length {actual} differs from L_n = {expected}")
            }
            CoverageReport::NotCovered { offset, window } => {
                write!(f, "window {window} at offset {offset} is outside S(n) or repeated")
            }
        }
    }
}

/// Whether the cyclic windows of `seq` are exactly S(n), each once. Since
/// |S(n)| = L_n, that is: length L_n, all windows in S(n), none repeated.
pub fn covers_s(seq: &CyclicSequence, n: usize) -> Result<CoverageReport> {
    if !seq.is_cyclic() {
        return Err(Error::WrongMode { expected: "cyclic" });
    }
    let expected = lower_bound(n, LowerBoundMethod::Formula)?;
    if seq.len() as u128 != expected {
        return Ok(CoverageReport::LengthMismatch { expected, actual: seq.len() });
    }
    let mut seen = HashSet::with_capacity(seq.len());
    for i in 0..seq.len() {
        let w = window_at(seq, i, n);
        if !in_s(w.bits()) || !seen.insert(w.clone()) {
            return Ok(CoverageReport::NotCovered { offset: i, window: w });
        }
    }
    Ok(CoverageReport::Covered)
}

/// True iff `b` is a rotation of `a`.
pub fn cyclic_equal(a: &CyclicSequence, b: &CyclicSequence) -> bool {
    a.len() == b.len() && a.canonical_rotation().bits() == b.canonical_rotation().bits()
}
