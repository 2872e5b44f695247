//! Backtracking searches for longer orientable sequences.
//!
//! A cyclic sequence is extended by cutting it at some position, appending
//! bits to the resulting linear string while every new window stays unused
//! in both directions, and closing the cycle again once the `n - 1` seam
//! windows are legal. Acyclic sequences grow at either end the same way,
//! without the closing step.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::bounds::{aos_upper_bound, trivial_upper_bound, upper_bound};
use crate::error::{Error, Result};
use crate::sequence::{CyclicSequence, Mode};
use crate::verify::check_orientable;

/// Node expansions allowed when no budget is given.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest order the searches accept (windows are packed into `u64`).
pub const SEARCH_LIMIT: usize = 32;

/// Largest order for [`exhaustive_max`].
pub const EXHAUSTIVE_LIMIT: usize = 7;

/// Up to this order the used-window set is a dense bitmap.
const DENSE_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heuristic {
    /// Longest extension at one cut, then move on to the next cut.
    A,
    /// Longest extension over all cuts, apply it, repeat.
    B,
    /// First extension found at each cut, then move on.
    C,
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Heuristic::A),
            "b" => Ok(Heuristic::B),
            "c" => Ok(Heuristic::C),
            _ => Err(Error::Internal(format!("unknown heuristic {s:?}; expected a, b or c"))),
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Heuristic::A => "a",
            Heuristic::B => "b",
            Heuristic::C => "c",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub heuristic: Heuristic,
    pub budget: u64,
    /// Only accept results with an odd number of 1s and at most one cyclic
    /// occurrence of `0^(n-4)`, the shape a Lempel-lift recursion wants.
    pub lift_filter: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            heuristic: Heuristic::B,
            budget: DEFAULT_BUDGET,
            lift_filter: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub sequence: CyclicSequence,
    pub expansions: u64,
    pub budget_exhausted: bool,
    /// Number of accepted extension steps.
    pub steps: usize,
}

// ---------------------------------------------------------------------------
// Window helpers.

#[derive(Debug, Clone, Copy)]
struct Order {
    n: usize,
    mask: u64,
}

impl Order {
    fn new(n: usize) -> Self {
        Self { n, mask: (1u64 << n) - 1 }
    }

    fn rev(self, w: u64) -> u64 {
        w.reverse_bits() >> (64 - self.n)
    }

    fn tail_mask(self) -> u64 {
        self.mask >> 1
    }

    fn pack(bits: impl IntoIterator<Item = u8>) -> u64 {
        bits.into_iter().fold(0, |acc, b| (acc << 1) | u64::from(b))
    }
}

/// Set of used windows, stored together with their reversals.
enum Occupancy {
    Dense(Vec<bool>),
    Sparse(HashSet<u64>),
}

impl Occupancy {
    fn new(n: usize) -> Self {
        if n <= DENSE_LIMIT {
            Occupancy::Dense(vec![false; 1 << n])
        } else {
            Occupancy::Sparse(HashSet::new())
        }
    }

    fn contains(&self, w: u64) -> bool {
        match self {
            Occupancy::Dense(v) => v[w as usize],
            Occupancy::Sparse(s) => s.contains(&w),
        }
    }

    fn insert(&mut self, w: u64) {
        match self {
            Occupancy::Dense(v) => v[w as usize] = true,
            Occupancy::Sparse(s) => {
                s.insert(w);
            }
        }
    }

    fn remove(&mut self, w: u64) {
        match self {
            Occupancy::Dense(v) => v[w as usize] = false,
            Occupancy::Sparse(s) => {
                s.remove(&w);
            }
        }
    }

    fn insert_pair(&mut self, ord: Order, w: u64) {
        self.insert(w);
        self.insert(ord.rev(w));
    }

    fn remove_pair(&mut self, ord: Order, w: u64) {
        self.remove(w);
        self.remove(ord.rev(w));
    }
}

#[derive(Debug)]
struct Budget {
    left: u64,
    spent: u64,
    exhausted: bool,
}

impl Budget {
    fn new(total: u64) -> Result<Self> {
        if total == 0 {
            return Err(Error::InvalidBudget);
        }
        Ok(Self { left: total, spent: 0, exhausted: false })
    }

    fn spend(&mut self) -> bool {
        if self.left == 0 {
            self.exhausted = true;
            return false;
        }
        self.left -= 1;
        self.spent += 1;
        true
    }
}

fn check_search_order(n: usize) -> Result<Order> {
    if !(6..=SEARCH_LIMIT).contains(&n) {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "extension search supports 6 <= n <= 32",
        });
    }
    Ok(Order::new(n))
}

fn require_orientable(seq: &CyclicSequence, n: usize) -> Result<()> {
    if check_orientable(seq, n)?.is_some() {
        return Err(Error::NotOrientable { n });
    }
    Ok(())
}

fn satisfies_lift_filter(bits: &[u8], n: usize) -> bool {
    let odd = bits.iter().filter(|&&b| b == 1).count() % 2 == 1;
    if !odd {
        return false;
    }
    let run = n - 4;
    let m = bits.len();
    if m == 0 || run == 0 {
        return true;
    }
    let hits = (0..m)
        .filter(|&i| (0..run).all(|j| bits[(i + j) % m] == 0))
        .take(2)
        .count();
    hits <= 1
}

// ---------------------------------------------------------------------------
// Linear extension DFS.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Goal {
    Longest,
    First,
}

/// Appends bits after a fixed linear prefix whose windows are already in
/// `occ`. With `head` set, an extension only counts once the wrap-around
/// windows back to the first `n - 1` bits are legal as well.
struct Extender<'a> {
    ord: Order,
    occ: &'a mut Occupancy,
    budget: &'a mut Budget,
    goal: Goal,
    head: Option<u64>,
    cap: usize,
    path: Vec<u8>,
    best: Vec<u8>,
    accept: &'a dyn Fn(&[u8]) -> bool,
}

impl Extender<'_> {
    /// Returns true when the search should stop.
    fn go(&mut self, tail: u64) -> bool {
        if !self.budget.spend() {
            return true;
        }
        if !self.path.is_empty() && self.path.len() > self.best.len() {
            let ok = match self.head {
                Some(head) => self.closes(tail, head),
                None => true,
            };
            if ok && (self.accept)(&self.path) {
                self.best.clone_from(&self.path);
                if self.goal == Goal::First || self.best.len() == self.cap {
                    return true;
                }
            }
        }
        if self.path.len() == self.cap {
            return false;
        }
        for b in 0..2u64 {
            let w = ((tail << 1) | b) & self.ord.mask;
            let r = self.ord.rev(w);
            if w == r || self.occ.contains(w) {
                continue;
            }
            self.occ.insert(w);
            self.occ.insert(r);
            self.path.push(b as u8);
            let stop = self.go(w & self.ord.tail_mask());
            self.path.pop();
            self.occ.remove(w);
            self.occ.remove(r);
            if stop {
                return true;
            }
        }
        false
    }

    /// Whether the `n - 1` windows spanning `tail · head` are all new,
    /// distinct and non-palindromic.
    fn closes(&mut self, tail: u64, head: u64) -> bool {
        let n = self.ord.n;
        let joined = (u128::from(tail) << (n - 1)) | u128::from(head);
        let mut added = Vec::with_capacity(n - 1);
        let mut ok = true;
        for j in 0..n - 1 {
            let w = ((joined >> (n - 2 - j)) as u64) & self.ord.mask;
            if w == self.ord.rev(w) || self.occ.contains(w) {
                ok = false;
                break;
            }
            self.occ.insert_pair(self.ord, w);
            added.push(w);
        }
        for w in added {
            self.occ.remove_pair(self.ord, w);
        }
        ok
    }
}

// ---------------------------------------------------------------------------
// Cyclic extension.

/// The current cyclic sequence with all of its windows marked used.
struct CyclicState {
    ord: Order,
    bits: Vec<u8>,
    occ: Occupancy,
}

impl CyclicState {
    fn new(ord: Order, bits: Vec<u8>) -> Self {
        let mut occ = Occupancy::new(ord.n);
        for i in 0..bits.len() {
            occ.insert_pair(ord, Self::window(ord, &bits, i));
        }
        Self { ord, bits, occ }
    }

    fn window(ord: Order, bits: &[u8], start: usize) -> u64 {
        let m = bits.len();
        Order::pack((0..ord.n).map(|j| bits[(start + j) % m]))
    }

    /// Longest (or first) string that can be inserted before position `cut`.
    fn try_cut(
        &mut self,
        cut: usize,
        goal: Goal,
        cap: usize,
        budget: &mut Budget,
        accept: &dyn Fn(&[u8]) -> bool,
    ) -> Vec<u8> {
        let n = self.ord.n;
        let m = self.bits.len();
        // Seam windows start at cut-n+1 … cut-1.
        let seam: Vec<u64> = (1..n)
            .map(|d| Self::window(self.ord, &self.bits, (cut + m * n - d) % m))
            .collect();
        for &w in &seam {
            self.occ.remove_pair(self.ord, w);
        }
        let tail = Order::pack((1..n).rev().map(|d| self.bits[(cut + m * n - d) % m]));
        let head = Order::pack((0..n - 1).map(|j| self.bits[(cut + j) % m]));
        let mut ext = Extender {
            ord: self.ord,
            occ: &mut self.occ,
            budget,
            goal,
            head: Some(head),
            cap,
            path: Vec::new(),
            best: Vec::new(),
            accept,
        };
        ext.go(tail);
        let best = ext.best;
        for &w in &seam {
            self.occ.insert_pair(self.ord, w);
        }
        best
    }

    fn insert(&mut self, cut: usize, ext: &[u8]) {
        let mut bits = Vec::with_capacity(self.bits.len() + ext.len());
        bits.extend_from_slice(&self.bits[..cut]);
        bits.extend_from_slice(ext);
        bits.extend_from_slice(&self.bits[cut..]);
        *self = Self::new(self.ord, bits);
    }
}

/// Extends a cyclic orientable sequence with the default options and the
/// given heuristic and budget.
pub fn extend_cyclic(
    os: &CyclicSequence,
    n: usize,
    heuristic: Heuristic,
    budget: u64,
) -> Result<CyclicSequence> {
    let opts = SearchOptions { heuristic, budget, ..SearchOptions::default() };
    Ok(extend_cyclic_with(os, n, &opts)?.sequence)
}

pub fn extend_cyclic_with(
    os: &CyclicSequence,
    n: usize,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    let ord = check_search_order(n)?;
    if !os.is_cyclic() {
        return Err(Error::WrongMode { expected: "cyclic" });
    }
    require_orientable(os, n)?;
    let mut budget = Budget::new(opts.budget)?;
    let limit = upper_bound(n)? as usize;
    let mut state = CyclicState::new(ord, os.bits().to_vec());
    let mut steps = 0;

    let lift = opts.lift_filter;
    let goal = if opts.heuristic == Heuristic::C { Goal::First } else { Goal::Longest };

    match opts.heuristic {
        Heuristic::A | Heuristic::C => {
            let mut cut = 0;
            let mut idle = 0;
            while idle < state.bits.len() && state.bits.len() < limit && !budget.exhausted {
                let m = state.bits.len();
                let base = state.bits.clone();
                let accept = |x: &[u8]| !lift || filter_insert(&base, cut, x, n);
                let ext = state.try_cut(cut, goal, limit - m, &mut budget, &accept);
                if ext.is_empty() {
                    idle += 1;
                    cut = (cut + 1) % m;
                } else {
                    state.insert(cut, &ext);
                    steps += 1;
                    idle = 0;
                    cut = (cut + ext.len() + 1) % state.bits.len();
                }
            }
        }
        Heuristic::B => {
            while state.bits.len() < limit && !budget.exhausted {
                let m = state.bits.len();
                let base = state.bits.clone();
                let mut best: Option<(usize, Vec<u8>)> = None;
                for cut in 0..m {
                    let accept = |x: &[u8]| !lift || filter_insert(&base, cut, x, n);
                    let ext = state.try_cut(cut, goal, limit - m, &mut budget, &accept);
                    if !ext.is_empty() && best.as_ref().is_none_or(|(_, b)| ext.len() > b.len()) {
                        best = Some((cut, ext));
                    }
                    if budget.exhausted || best.as_ref().is_some_and(|(_, b)| m + b.len() == limit) {
                        break;
                    }
                }
                match best {
                    Some((cut, ext)) => {
                        state.insert(cut, &ext);
                        steps += 1;
                    }
                    None => break,
                }
            }
        }
    }

    Ok(SearchOutcome {
        sequence: CyclicSequence::from_vec_unchecked(state.bits, Mode::Cyclic),
        expansions: budget.spent,
        budget_exhausted: budget.exhausted,
        steps,
    })
}

fn filter_insert(base: &[u8], cut: usize, ext: &[u8], n: usize) -> bool {
    let mut bits = base[..cut].to_vec();
    bits.extend_from_slice(ext);
    bits.extend_from_slice(&base[cut..]);
    satisfies_lift_filter(&bits, n)
}

// ---------------------------------------------------------------------------
// Exhaustive maximum.

struct MaxSearch {
    ord: Order,
    occ: Occupancy,
    /// Smallest window allowed in either direction.
    floor: u64,
    head: u64,
    cap: usize,
    path: Vec<u8>,
    best: Vec<u8>,
}

impl MaxSearch {
    fn allowed(&self, w: u64) -> bool {
        let r = self.ord.rev(w);
        w != r && w.min(r) > self.floor && !self.occ.contains(w)
    }

    /// Extends the sequence `path`, whose first `n` bits are the floor
    /// window. Stops once a sequence of length `cap` is found.
    fn go(&mut self, tail: u64) -> bool {
        let len = self.path.len();
        if len > self.best.len() && self.closes(tail) {
            self.best.clone_from(&self.path);
            if len == self.cap {
                return true;
            }
        }
        if len == self.cap {
            return false;
        }
        for b in 0..2u64 {
            let w = ((tail << 1) | b) & self.ord.mask;
            if !self.allowed(w) {
                continue;
            }
            self.occ.insert_pair(self.ord, w);
            self.path.push(b as u8);
            let stop = self.go(w & self.ord.tail_mask());
            self.path.pop();
            self.occ.remove_pair(self.ord, w);
            if stop {
                return true;
            }
        }
        false
    }

    fn closes(&mut self, tail: u64) -> bool {
        let n = self.ord.n;
        let joined = (u128::from(tail) << (n - 1)) | u128::from(self.head);
        let mut added = Vec::with_capacity(n - 1);
        let mut ok = true;
        for j in 0..n - 1 {
            let w = ((joined >> (n - 2 - j)) as u64) & self.ord.mask;
            if !self.allowed(w) {
                ok = false;
                break;
            }
            self.occ.insert_pair(self.ord, w);
            added.push(w);
        }
        for w in added {
            self.occ.remove_pair(self.ord, w);
        }
        ok
    }
}

/// A longest cyclic orientable sequence of order `n`, by exhaustive search.
/// Each candidate is normalized to start with its least window (over both
/// reading directions), which fixes the rotation and orientation. Returns
/// an empty sequence when no orientable sequence exists.
pub fn exhaustive_max(n: usize) -> Result<CyclicSequence> {
    if !(2..=EXHAUSTIVE_LIMIT).contains(&n) {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "exhaustive search is capped at 2 <= n <= 7",
        });
    }
    let ord = Order::new(n);
    let cap = if n >= 5 { upper_bound(n)? } else { trivial_upper_bound(n)? } as usize;
    // Canonical pair representatives in increasing order.
    let reps: Vec<u64> = (0..1u64 << n).filter(|&w| w < ord.rev(w)).collect();
    let mut best: Vec<u8> = Vec::new();
    for (i, &w0) in reps.iter().enumerate() {
        // Every window of a sequence led by w0 comes from reps[i..].
        if reps.len() - i <= best.len() || best.len() == cap {
            break;
        }
        let mut search = MaxSearch {
            ord,
            occ: Occupancy::new(n),
            floor: w0,
            head: w0 >> 1,
            cap,
            path: (0..n).rev().map(|j| ((w0 >> j) & 1) as u8).collect(),
            best: Vec::new(),
        };
        search.occ.insert_pair(ord, w0);
        search.go(w0 & ord.tail_mask());
        if search.best.len() > best.len() {
            best = search.best;
        }
    }
    Ok(CyclicSequence::from_vec_unchecked(best, Mode::Cyclic))
}

// ---------------------------------------------------------------------------
// Acyclic sequences.

/// Unrolls a cyclic orientable sequence into an acyclic one by repeating
/// its first `n - 1` bits at the end.
pub fn make_aos(os: &CyclicSequence, n: usize) -> Result<CyclicSequence> {
    if !os.is_cyclic() {
        return Err(Error::WrongMode { expected: "cyclic" });
    }
    require_orientable(os, n)?;
    let mut bits = os.bits().to_vec();
    bits.extend_from_slice(&os.bits()[..n - 1]);
    Ok(CyclicSequence::from_vec_unchecked(bits, Mode::Acyclic))
}

/// Longest right extension of an acyclic sequence within the budget.
fn extend_right(bits: &[u8], ord: Order, cap: usize, budget: &mut Budget) -> Vec<u8> {
    let n = ord.n;
    let mut occ = Occupancy::new(n);
    for i in 0..=bits.len() - n {
        occ.insert_pair(ord, Order::pack(bits[i..i + n].iter().copied()));
    }
    let tail = Order::pack(bits[bits.len() - (n - 1)..].iter().copied());
    let accept = |_: &[u8]| true;
    let mut ext = Extender {
        ord,
        occ: &mut occ,
        budget,
        goal: Goal::Longest,
        head: None,
        cap,
        path: Vec::new(),
        best: Vec::new(),
        accept: &accept,
    };
    ext.go(tail);
    ext.best
}

pub fn extend_aos(aos: &CyclicSequence, n: usize, budget: u64) -> Result<CyclicSequence> {
    Ok(extend_aos_with(aos, n, budget)?.sequence)
}

/// Grows an acyclic orientable sequence at both ends, alternating a
/// longest right extension with a longest left extension until neither end
/// grows or the budget runs out.
pub fn extend_aos_with(aos: &CyclicSequence, n: usize, budget: u64) -> Result<SearchOutcome> {
    let ord = check_search_order(n)?;
    if aos.is_cyclic() {
        return Err(Error::WrongMode { expected: "acyclic" });
    }
    require_orientable(aos, n)?;
    let mut budget = Budget::new(budget)?;
    let limit = aos_upper_bound(n)? as usize;
    let mut bits = aos.bits().to_vec();
    let mut steps = 0;
    let mut stalled = 0;
    let mut right = true;
    while stalled < 2 && bits.len() < limit && !budget.exhausted {
        if !right {
            bits.reverse();
        }
        let ext = extend_right(&bits, ord, limit - bits.len(), &mut budget);
        bits.extend_from_slice(&ext);
        if !right {
            bits.reverse();
        }
        if ext.is_empty() {
            stalled += 1;
        } else {
            stalled = 0;
            steps += 1;
        }
        right = !right;
    }
    Ok(SearchOutcome {
        sequence: CyclicSequence::from_vec_unchecked(bits, Mode::Acyclic),
        expansions: budget.spent,
        budget_exhausted: budget.exhausted,
        steps,
    })
}
