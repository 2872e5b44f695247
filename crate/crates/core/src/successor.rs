//! Successor rule: the next bit of the orientable sequence as a function of
//! the current length-`n` window alone.
//!
//! For a window `α = a_1 … a_n` the rule looks at three candidate tree
//! nodes, one per parent-rule case, each a rotation of `α` with `a_1`
//! complemented or kept:
//!
//! * `β1 = 0^(n-i) 1 a_2 … a_i`, `i` the last index with `a_i = 1`;
//! * `β2 = a_2 … a_n 1`;
//! * `β3 = a_j … a_n 0 1^(j-2)`, `j > 1` the first index with `a_j = 0`.
//!
//! The window belongs to a conjugate pair of the tree exactly when one of
//! the candidates is a node whose parent edge uses that flip, in which case
//! the rule emits `ā_1`. Each call does a constant number of linear-time
//! membership tests, so a bit costs O(n) time and the state is O(n).

use crate::bounds::{trivial_upper_bound, FORMULA_LIMIT};
use crate::cyclejoin::{first_one_into, last_one_into, last_zero_into, root};
use crate::error::{domain, Error, Result};
use crate::sequence::{BitSink, CyclicSequence, Mode};
use crate::word::{is_asymmetric_bracelet_bits, least_rotation_start, BinaryWord, Membership};

/// A window known to lie in S(n), the union of the rotation classes of A(n).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuccessorWindow {
    window: BinaryWord,
}

impl SuccessorWindow {
    pub fn new(window: BinaryWord) -> Result<Self> {
        check_order(window.len())?;
        if !in_s(window.bits()) {
            return Err(domain(
                "successor window",
                window.bits(),
                "its necklace is not an asymmetric bracelet",
            ));
        }
        Ok(Self { window })
    }

    /// Skips the S(n) membership check.
    pub fn new_unchecked(window: BinaryWord) -> Self {
        Self { window }
    }

    pub fn word(&self) -> &BinaryWord {
        &self.window
    }
}

fn check_order(n: usize) -> Result<()> {
    if n < 6 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "orientable sequences are constructed for n >= 6",
        });
    }
    if n > FORMULA_LIMIT {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "exceeds the supported order 64",
        });
    }
    Ok(())
}

/// True iff the necklace of `w` is in A(n).
pub(crate) fn in_s(w: &[u8]) -> bool {
    let start = least_rotation_start(w);
    let mut neck = w[start..].to_vec();
    neck.extend_from_slice(&w[..start]);
    is_asymmetric_bracelet_bits(&neck)
}

/// Evaluation state for the rule: candidate buffers and a membership
/// counter, reused across calls.
#[derive(Debug, Default, Clone)]
pub struct SuccessorRule {
    mem: Membership,
    cand: Vec<u8>,
    flip: Vec<u8>,
}

impl SuccessorRule {
    pub fn new() -> Self {
        Self::default()
    }

    /// Membership tests performed so far.
    pub fn membership_tests(&self) -> u64 {
        self.mem.tests()
    }

    fn test_flip(&mut self, apply: fn(&[u8], &mut Vec<u8>) -> bool) -> bool {
        apply(&self.cand, &mut self.flip) && self.mem.is_asymmetric_bracelet(&self.flip)
    }

    /// Next bit after window `a` (assumed in S(n)).
    pub fn next_bit(&mut self, a: &[u8]) -> u8 {
        let n = a.len();
        let kept = a[0];
        let flipped = kept ^ 1;

        // First 1.
        if let Some(last_one) = a.iter().rposition(|&b| b == 1) {
            self.cand.clear();
            self.cand.resize(n - 1 - last_one, 0);
            self.cand.push(1);
            self.cand.extend_from_slice(&a[1..=last_one]);
            if self.mem.is_asymmetric_bracelet(&self.cand) && self.test_flip(first_one_into) {
                return flipped;
            }
        }

        // Last 1.
        self.cand.clear();
        self.cand.extend_from_slice(&a[1..]);
        self.cand.push(1);
        if self.mem.is_asymmetric_bracelet(&self.cand)
            && !self.test_flip(first_one_into)
            && self.test_flip(last_one_into)
        {
            return flipped;
        }

        // Last 0.
        if let Some(j) = (1..n).find(|&j| a[j] == 0) {
            self.cand.clear();
            self.cand.extend_from_slice(&a[j..]);
            self.cand.push(0);
            self.cand.extend(std::iter::repeat_n(1, j - 1));
            if self.mem.is_asymmetric_bracelet(&self.cand)
                && !self.test_flip(first_one_into)
                && !self.test_flip(last_one_into)
                && self.test_flip(last_zero_into)
            {
                return flipped;
            }
        }

        kept
    }
}

/// The bit following `alpha` in the constructed sequence.
pub fn successor_g(alpha: &SuccessorWindow) -> Result<u8> {
    check_order(alpha.window.len())?;
    Ok(SuccessorRule::new().next_bit(alpha.window.bits()))
}

/// Shift-register generator. Yields the first bit of each successive window,
/// starting with the seed's bits; the stream is periodic with period `L_n`.
#[derive(Debug, Clone)]
pub struct SuccessorGenerator {
    rule: SuccessorRule,
    window: Vec<u8>,
}

impl SuccessorGenerator {
    /// Validates the seed once; later windows stay in S(n) by construction.
    pub fn new(n: usize, seed: Option<&BinaryWord>) -> Result<Self> {
        check_order(n)?;
        let seed = match seed {
            Some(s) if s.len() != n => {
                return Err(domain("seed", s.bits(), "length differs from the order"))
            }
            Some(s) => SuccessorWindow::new(s.clone())?,
            None => SuccessorWindow::new_unchecked(root(n)?),
        };
        Ok(Self {
            rule: SuccessorRule::new(),
            window: seed.window.into_bits(),
        })
    }

    pub fn window(&self) -> &[u8] {
        &self.window
    }

    pub fn membership_tests(&self) -> u64 {
        self.rule.membership_tests()
    }

    /// Advances one step and returns the bit that left the window.
    pub fn step(&mut self) -> u8 {
        let out = self.window[0];
        let next = self.rule.next_bit(&self.window);
        self.window.copy_within(1.., 0);
        let n = self.window.len();
        self.window[n - 1] = next;
        out
    }

    /// Streams exactly `count` bits into `sink`.
    pub fn emit(&mut self, count: u64, sink: &mut impl BitSink) {
        for _ in 0..count {
            let b = self.step();
            sink.push_bit(b);
        }
    }
}

impl Iterator for SuccessorGenerator {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        Some(self.step())
    }
}

/// One full period of the successor-rule sequence, read from `seed`
/// (default: the tree root). Runs until the window returns to the seed.
pub fn generate_from_successor(n: usize, seed: Option<&BinaryWord>) -> Result<CyclicSequence> {
    let mut gen = SuccessorGenerator::new(n, seed)?;
    let start = gen.window.clone();
    let cap = trivial_upper_bound(n)?;
    let mut bits = Vec::new();
    loop {
        bits.push(gen.step());
        if gen.window == start {
            break;
        }
        if bits.len() as u128 > cap {
            return Err(Error::Internal(format!(
                "successor orbit from {} did not close within {cap} steps",
                crate::word::bits_to_string(&start)
            )));
        }
    }
    Ok(CyclicSequence::from_vec_unchecked(bits, Mode::Cyclic))
}
