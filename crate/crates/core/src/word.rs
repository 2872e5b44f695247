//! Bit-string primitives: rotations, reversal, necklaces, bracelets.
//!
//! Positions in the public contracts are 1-indexed (`a_1 … a_n`). The slice
//! helpers at the bottom of the module work on raw `&[u8]` bit buffers with
//! 0-based indices and never allocate; the generators use those directly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A fixed-length binary string. Every element is 0 or 1 and the length is
/// at least 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    bits: Vec<u8>,
}

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBit(char::from(b'0'.wrapping_add(b))));
        }
        Ok(Self { bits })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        Self::new(bits.to_vec())
    }

    pub(crate) fn from_vec_unchecked(bits: Vec<u8>) -> Self {
        debug_assert!(!bits.is_empty() && bits.iter().all(|&b| b <= 1));
        Self { bits }
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.bits
    }

    /// Bit at 1-indexed position `i`.
    pub fn bit(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.len(), "position {i} outside [1, {}]", self.len());
        self.bits[i - 1]
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Copy with the bit at 1-indexed position `i` complemented.
    pub fn flipped(&self, i: usize) -> Self {
        assert!(i >= 1 && i <= self.len(), "position {i} outside [1, {}]", self.len());
        let mut bits = self.bits.clone();
        bits[i - 1] ^= 1;
        Self { bits }
    }

    /// `a_{k+1} … a_n a_1 … a_k`, with `k` taken modulo the length.
    pub fn rotated_left(&self, k: usize) -> Self {
        let mut bits = self.bits.clone();
        let k = k % bits.len();
        bits.rotate_left(k);
        Self { bits }
    }

    pub fn reversed(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.reverse();
        Self { bits }
    }

    pub fn concat(&self, other: &BinaryWord) -> Self {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Self { bits }
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits_to_string(&self.bits))
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({self})")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_bits(s)?)
    }
}

/// Parses a string of `'0'`/`'1'` characters.
pub fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::InvalidBit(other)),
        })
        .collect()
}

pub fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

/// Lexicographically smallest rotation of `w` and the 1-indexed offset `s`
/// such that rotating `w` left by `s - 1` yields it. Periodic words report
/// the smallest such offset.
pub fn least_rotation(w: &BinaryWord) -> (BinaryWord, usize) {
    let start = least_rotation_start(w.bits());
    (w.rotated_left(start), start + 1)
}

/// The necklace of `w`'s rotation class.
pub fn necklace_of(w: &BinaryWord) -> BinaryWord {
    least_rotation(w).0
}

/// Period of `w` if `w` is a necklace, `None` otherwise. The period equals
/// `n` exactly for aperiodic necklaces (Lyndon words).
pub fn necklace_period(w: &BinaryWord) -> Option<usize> {
    necklace_period_of(w.bits())
}

pub fn is_necklace(w: &BinaryWord) -> bool {
    necklace_period_of(w.bits()).is_some()
}

/// Shortest `γ` with `w = γ^t`.
pub fn aperiodic_prefix(w: &BinaryWord) -> BinaryWord {
    let p = aperiodic_prefix_len(w.bits());
    BinaryWord::from_vec_unchecked(w.bits()[..p].to_vec())
}

pub fn is_palindrome(w: &BinaryWord) -> bool {
    is_palindrome_bits(w.bits())
}

/// True iff `w` is the smallest string under rotation and reversal.
pub fn is_bracelet(w: &BinaryWord) -> bool {
    is_bracelet_bits(w.bits())
}

/// True iff `w` is a member of A(n): a necklace whose reversal's necklace is
/// strictly larger. Linear time, no enumeration of the class.
pub fn is_asymmetric_bracelet(w: &BinaryWord) -> bool {
    is_asymmetric_bracelet_bits(w.bits())
}

// ---------------------------------------------------------------------------
// Slice-level helpers (0-based, allocation-free).

/// 0-based start of the least rotation of the cyclic string `at(0..n)`.
/// Two-pointer minimum-expression scan; returns the smallest such start.
pub(crate) fn least_rotation_start_by(n: usize, at: impl Fn(usize) -> u8) -> usize {
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = at(wrap(i + k, n));
        let b = at(wrap(j + k, n));
        match a.cmp(&b) {
            Ordering::Equal => k += 1,
            Ordering::Greater => {
                i += k + 1;
                if i == j {
                    i += 1;
                }
                k = 0;
            }
            Ordering::Less => {
                j += k + 1;
                if i == j {
                    j += 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// `x mod n` for `x < 2n`, without a division.
#[inline]
fn wrap(x: usize, n: usize) -> usize {
    if x >= n {
        x - n
    } else {
        x
    }
}

pub fn least_rotation_start(w: &[u8]) -> usize {
    if w.len() <= 1 {
        return 0;
    }
    least_rotation_start_by(w.len(), |i| w[i])
}

/// Period of `w` when it is a necklace.
pub fn necklace_period_of(w: &[u8]) -> Option<usize> {
    let n = w.len();
    if n == 0 {
        return None;
    }
    let mut p = 1;
    for i in 1..n {
        match w[i - p].cmp(&w[i]) {
            Ordering::Greater => return None,
            Ordering::Less => p = i + 1,
            Ordering::Equal => {}
        }
    }
    n.is_multiple_of(p).then_some(p)
}

/// Length of the shortest `γ` with `w = γ^t` (prefix function).
pub fn aperiodic_prefix_len(w: &[u8]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    for i in 1..n {
        let mut k = fail[i - 1];
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

pub fn is_palindrome_bits(w: &[u8]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// Compares `w` against the necklace of `w^R`.
fn cmp_with_reversal_necklace(w: &[u8]) -> Ordering {
    let n = w.len();
    let rev = |i: usize| w[n - 1 - i];
    let start = least_rotation_start_by(n, rev);
    for (i, &b) in w.iter().enumerate() {
        match b.cmp(&rev(wrap(start + i, n))) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

pub fn is_bracelet_bits(w: &[u8]) -> bool {
    necklace_period_of(w).is_some() && cmp_with_reversal_necklace(w) != Ordering::Greater
}

pub fn is_asymmetric_bracelet_bits(w: &[u8]) -> bool {
    necklace_period_of(w).is_some() && cmp_with_reversal_necklace(w) == Ordering::Less
}

/// A(n) membership tester that counts how many tests it has run. The
/// generators thread one of these through their hot paths so the work
/// accounting can be observed.
#[derive(Debug, Default, Clone)]
pub struct Membership {
    tests: u64,
}

impl Membership {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn is_asymmetric_bracelet(&mut self, w: &[u8]) -> bool {
        self.tests += 1;
        is_asymmetric_bracelet_bits(w)
    }

    pub fn tests(&self) -> u64 {
        self.tests
    }
}

/// Visits every binary necklace of length `n` in lexicographic order,
/// together with its period (FKM prenecklace generation).
pub fn for_each_necklace(n: usize, mut visit: impl FnMut(&[u8], usize)) {
    if n == 0 {
        return;
    }
    // 1-based working array; a[0] is a sentinel.
    let mut a = vec![0u8; n + 1];
    let mut p = 1;
    loop {
        if n.is_multiple_of(p) {
            visit(&a[1..], p);
        }
        let Some(i) = (1..=n).rev().find(|&i| a[i] == 0) else {
            break;
        };
        a[i] = 1;
        p = i;
        for j in i + 1..=n {
            a[j] = a[j - p];
        }
    }
}

/// All members of A(n), in lexicographic order.
pub fn asymmetric_bracelets(n: usize) -> Vec<BinaryWord> {
    let mut out = Vec::new();
    for_each_necklace(n, |w, _| {
        if is_asymmetric_bracelet_bits(w) {
            out.push(BinaryWord::from_vec_unchecked(w.to_vec()));
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn brute_least_rotation(x: &BinaryWord) -> (BinaryWord, usize) {
        (0..x.len())
            .map(|k| (x.rotated_left(k), k + 1))
            .min()
            .unwrap()
    }

    fn all_words(n: usize) -> impl Iterator<Item = BinaryWord> {
        (0u32..1 << n).map(move |v| {
            BinaryWord::new((0..n).map(|i| ((v >> (n - 1 - i)) & 1) as u8).collect()).unwrap()
        })
    }

    /// Brute-force A(n) membership: minimal in [w] ∪ [w^R] and [w] ≠ [w^R].
    fn brute_asym(x: &BinaryWord) -> bool {
        let rots: Vec<_> = (0..x.len()).map(|k| x.rotated_left(k)).collect();
        let r = x.reversed();
        let rrots: Vec<_> = (0..x.len()).map(|k| r.rotated_left(k)).collect();
        let class_min = rots.iter().chain(rrots.iter()).min().unwrap();
        let symmetric = rots.contains(&r);
        x == class_min && !symmetric
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(BinaryWord::new(vec![]), Err(Error::EmptyWord));
        assert_eq!("01a".parse::<BinaryWord>(), Err(Error::InvalidBit('a')));
        assert!(BinaryWord::new(vec![0, 2]).is_err());
    }

    #[test]
    fn least_rotation_examples() {
        assert_eq!(least_rotation(&w("001101")), (w("001101"), 1));
        // a_5 a_6 a_1 … a_4 = 001101
        assert_eq!(least_rotation(&w("110100")), (w("001101"), 5));
        assert_eq!(least_rotation(&w("0101")), (w("0101"), 1));
        assert_eq!(least_rotation(&w("1010")), (w("0101"), 2));
        assert_eq!(least_rotation(&w("1")), (w("1"), 1));
    }

    #[test]
    fn necklace_period_examples() {
        assert_eq!(necklace_period(&w("001011")), Some(6));
        assert_eq!(necklace_period(&w("010101")), Some(2));
        assert_eq!(necklace_period(&w("001101")), Some(6));
        assert_eq!(necklace_period(&w("011010")), None);
        assert_eq!(necklace_period(&w("000")), Some(1));
    }

    #[test]
    fn aperiodic_prefix_examples() {
        assert_eq!(aperiodic_prefix(&w("010101")), w("01"));
        assert_eq!(aperiodic_prefix(&w("001011")), w("001011"));
        assert_eq!(aperiodic_prefix(&w("001001001")), w("001"));
        assert_eq!(aperiodic_prefix(&w("0010010")), w("0010010"));
    }

    #[test]
    fn palindrome_examples() {
        assert!(is_palindrome(&w("010")));
        assert!(!is_palindrome(&w("0011")));
        assert!(!is_palindrome(&w("000101101")));
        assert!(is_palindrome(&w("1")));
    }

    #[test]
    fn bracelet_examples() {
        assert!(is_bracelet(&w("001011")));
        assert!(!is_bracelet(&w("001101")));
        assert!(is_bracelet(&w("000000000")));
        assert!(is_asymmetric_bracelet(&w("000001011")));
        assert!(!is_asymmetric_bracelet(&w("000001101")));
        assert!(!is_asymmetric_bracelet(&w("000000000")));
    }

    #[test]
    fn asymmetric_bracelets_of_order_nine_match_table() {
        let expected = [
            "000001011", "000010011", "000010111", "000100101", "000100111", "000101011",
            "000101111", "000110111", "001001011", "001010111", "001011011", "001011111",
            "001101111", "010110111",
        ];
        let got: Vec<String> = asymmetric_bracelets(9).iter().map(|x| x.to_string()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn exhaustive_agreement_with_brute_force() {
        for n in 1..=14 {
            for x in all_words(n) {
                let (neck, off) = least_rotation(&x);
                assert_eq!((neck.clone(), off), brute_least_rotation(&x), "{x}");
                assert_eq!(is_necklace(&x), neck == x, "{x}");
                assert_eq!(is_asymmetric_bracelet(&x), brute_asym(&x), "{x}");
                if is_asymmetric_bracelet(&x) {
                    assert!(is_bracelet(&x));
                }
                if is_bracelet(&x) {
                    assert!(necklace_period(&x).is_some());
                }
                if let Some(p) = necklace_period(&x) {
                    assert_eq!(aperiodic_prefix(&x).len(), p);
                }
            }
        }
    }

    #[test]
    fn symmetric_necklaces_split_into_two_palindromes() {
        for n in 1..=14 {
            for x in all_words(n).filter(is_necklace) {
                let symmetric = least_rotation(&x.reversed()).0 == x;
                let splits = (0..=n).any(|i| {
                    is_palindrome_bits(&x.bits()[..i]) && is_palindrome_bits(&x.bits()[i..])
                });
                assert_eq!(symmetric, splits, "{x}");
            }
        }
    }

    #[test]
    fn asymmetric_bracelet_counts() {
        let expected = [1, 2, 6, 14, 30, 62, 128, 252, 495, 968];
        for (n, &count) in (6..=15).zip(expected.iter()) {
            assert_eq!(all_words(n).filter(is_asymmetric_bracelet).count(), count, "n={n}");
            assert_eq!(asymmetric_bracelets(n).len(), count, "n={n}");
        }
    }

    #[test]
    fn necklace_enumeration_matches_filter() {
        for n in 1..=12 {
            let mut fkm = Vec::new();
            for_each_necklace(n, |x, p| fkm.push((x.to_vec(), p)));
            let brute: Vec<_> = all_words(n)
                .filter(is_necklace)
                .map(|x| {
                    let p = aperiodic_prefix(&x).len();
                    (x.into_bits(), p)
                })
                .collect();
            assert_eq!(fkm, brute, "n={n}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word() -> impl Strategy<Value = BinaryWord> {
            prop::collection::vec(0u8..=1, 1..40).prop_map(|b| BinaryWord::new(b).unwrap())
        }

        proptest! {
            #[test]
            fn least_rotation_is_rotation_invariant(x in word(), k in 0usize..64) {
                let (neck, _) = least_rotation(&x);
                let (neck2, off2) = least_rotation(&x.rotated_left(k));
                prop_assert_eq!(&neck, &neck2);
                prop_assert_eq!(x.rotated_left(k).rotated_left(off2 - 1), neck2);
            }

            #[test]
            fn least_rotation_matches_brute_force(x in word()) {
                prop_assert_eq!(least_rotation(&x), brute_least_rotation(&x));
            }

            #[test]
            fn membership_is_reversal_class_aware(x in word()) {
                if is_asymmetric_bracelet(&x) {
                    let rev_neck = least_rotation(&x.reversed()).0;
                    prop_assert!(!is_asymmetric_bracelet(&rev_neck));
                    prop_assert!(rev_neck > x);
                }
            }
        }
    }
}
