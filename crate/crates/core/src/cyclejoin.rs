//! The cycle-joining tree over asymmetric bracelets.
//!
//! Every node of the tree is a member of A(n) written as its necklace. The
//! parent of a non-root node is found by one of three single-bit flips,
//! tried in order: first 1, last 1, last 0. Each parent/child edge is a
//! conjugate pair joining the two rotation classes.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::error::{domain, Error, Result};
use crate::word::{
    asymmetric_bracelets, is_asymmetric_bracelet_bits, least_rotation, least_rotation_start,
    necklace_period_of, BinaryWord, Membership,
};

/// Largest order [`build_tree`] will materialize.
pub const TREE_LIMIT: usize = 20;

/// Which flip of the parent rule produced an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParentCase {
    FirstOne,
    LastOne,
    LastZero,
}

impl ParentCase {
    pub fn tag(self) -> &'static str {
        match self {
            ParentCase::FirstOne => "first1",
            ParentCase::LastOne => "last1",
            ParentCase::LastZero => "last0",
        }
    }

    pub fn color(self) -> &'static str {
        match self {
            ParentCase::FirstOne => "black",
            ParentCase::LastOne => "blue",
            ParentCase::LastZero => "red",
        }
    }
}

impl fmt::Display for ParentCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

// ---------------------------------------------------------------------------
// Flips on raw buffers. Each writes into `dst` and reports whether the flip
// was defined for `src`.

pub(crate) fn first_one_into(src: &[u8], dst: &mut Vec<u8>) -> bool {
    let Some(i) = src.iter().position(|&b| b == 1) else {
        return false;
    };
    dst.clear();
    dst.extend_from_slice(src);
    dst[i] = 0;
    true
}

/// Closed form for a necklace `β 1 0^t 1`: the result is `0^(t+1) β 1`.
pub(crate) fn last_one_into(src: &[u8], dst: &mut Vec<u8>) -> bool {
    let n = src.len();
    if n < 2 || src[n - 1] != 1 {
        return false;
    }
    let Some(q) = src[..n - 1].iter().rposition(|&b| b == 1) else {
        return false;
    };
    let t = n - 2 - q;
    dst.clear();
    dst.resize(t + 1, 0);
    dst.extend_from_slice(&src[..q]);
    dst.push(1);
    true
}

pub(crate) fn last_zero_into(src: &[u8], dst: &mut Vec<u8>) -> bool {
    let Some(j) = src.iter().rposition(|&b| b == 0) else {
        return false;
    };
    dst.clear();
    dst.extend_from_slice(src);
    dst[j] = 1;
    true
}

/// Scratch buffers for evaluating the parent rule without allocating.
#[derive(Debug, Default, Clone)]
pub(crate) struct ParentScratch {
    buf: Vec<u8>,
}

impl ParentScratch {
    /// Parent of `alpha` (assumed in A(n), not the root). The result is left
    /// in `self.parent()`.
    pub(crate) fn compute(&mut self, mem: &mut Membership, alpha: &[u8]) -> ParentCase {
        if first_one_into(alpha, &mut self.buf) && mem.is_asymmetric_bracelet(&self.buf) {
            return ParentCase::FirstOne;
        }
        if last_one_into(alpha, &mut self.buf) && mem.is_asymmetric_bracelet(&self.buf) {
            return ParentCase::LastOne;
        }
        last_zero_into(alpha, &mut self.buf);
        ParentCase::LastZero
    }

    pub(crate) fn parent(&self) -> &[u8] {
        &self.buf
    }
}

// ---------------------------------------------------------------------------
// Public word-level operations.

fn require_necklace(op: &'static str, w: &BinaryWord) -> Result<()> {
    if necklace_period_of(w.bits()).is_none() {
        return Err(domain(op, w.bits(), "not a necklace"));
    }
    Ok(())
}

fn require_mixed(op: &'static str, w: &BinaryWord) -> Result<()> {
    let weight = w.weight();
    if weight == 0 || weight == w.len() {
        return Err(domain(op, w.bits(), "needs at least one 0 and one 1"));
    }
    Ok(())
}

/// Flips the first 1 of a necklace in place; the result is a necklace.
pub fn first_one(alpha: &BinaryWord) -> Result<BinaryWord> {
    require_mixed("first_one", alpha)?;
    require_necklace("first_one", alpha)?;
    let mut out = Vec::new();
    first_one_into(alpha.bits(), &mut out);
    Ok(BinaryWord::from_vec_unchecked(out))
}

/// Necklace of the class of `alpha` with its last 1 flipped.
pub fn last_one(alpha: &BinaryWord) -> Result<BinaryWord> {
    require_necklace("last_one", alpha)?;
    if alpha.weight() < 2 {
        return Err(domain("last_one", alpha.bits(), "needs at least two 1s"));
    }
    let mut out = Vec::new();
    if !last_one_into(alpha.bits(), &mut out) {
        return Err(domain("last_one", alpha.bits(), "does not end in 1"));
    }
    Ok(BinaryWord::from_vec_unchecked(out))
}

/// Necklace of the class of `alpha` with its first bit set to 1.
pub fn first_zero(alpha: &BinaryWord) -> Result<BinaryWord> {
    require_necklace("first_zero", alpha)?;
    if alpha.bit(1) != 0 {
        return Err(domain("first_zero", alpha.bits(), "does not begin with 0"));
    }
    Ok(least_rotation(&alpha.flipped(1)).0)
}

/// Flips the last 0 of a necklace in place; the result is a necklace.
pub fn last_zero(alpha: &BinaryWord) -> Result<BinaryWord> {
    require_mixed("last_zero", alpha)?;
    require_necklace("last_zero", alpha)?;
    let mut out = Vec::new();
    last_zero_into(alpha.bits(), &mut out);
    Ok(BinaryWord::from_vec_unchecked(out))
}

/// `0^(n-4)1011`, the smallest member of A(n).
pub fn root(n: usize) -> Result<BinaryWord> {
    if n < 6 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "the cycle-joining tree needs n >= 6",
        });
    }
    let mut bits = vec![0u8; n - 4];
    bits.extend_from_slice(&[1, 0, 1, 1]);
    Ok(BinaryWord::from_vec_unchecked(bits))
}

fn require_tree_node(op: &'static str, alpha: &BinaryWord) -> Result<()> {
    if alpha.len() < 6 {
        return Err(Error::UnsupportedOrder {
            n: alpha.len(),
            reason: "the cycle-joining tree needs n >= 6",
        });
    }
    if !is_asymmetric_bracelet_bits(alpha.bits()) {
        return Err(domain(op, alpha.bits(), "not an asymmetric bracelet"));
    }
    Ok(())
}

/// The parent of `alpha` together with the rule case that produced it.
pub fn parent_with_case(alpha: &BinaryWord) -> Result<(BinaryWord, ParentCase)> {
    require_tree_node("parent", alpha)?;
    if *alpha == root(alpha.len())? {
        return Err(domain("parent", alpha.bits(), "the root has no parent"));
    }
    let mut scratch = ParentScratch::default();
    let case = scratch.compute(&mut Membership::new(), alpha.bits());
    let parent = BinaryWord::from_vec_unchecked(scratch.parent().to_vec());
    if !is_asymmetric_bracelet_bits(parent.bits()) {
        return Err(Error::Internal(format!("parent of {alpha} left A(n): {parent}")));
    }
    Ok((parent, case))
}

pub fn parent(alpha: &BinaryWord) -> Result<BinaryWord> {
    parent_with_case(alpha).map(|(p, _)| p)
}

// ---------------------------------------------------------------------------
// Children.

/// Per-position flags: position `k` is set iff flipping bit `k` of the node
/// (then rotating to a necklace) yields one of its children.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChildMask {
    flags: Vec<bool>,
}

impl ChildMask {
    pub fn empty(n: usize) -> Self {
        Self {
            flags: vec![false; n],
        }
    }

    pub(crate) fn from_flags(flags: Vec<bool>) -> Self {
        Self { flags }
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    /// Flag at 1-indexed position `k`.
    pub fn get(&self, k: usize) -> bool {
        self.flags[k - 1]
    }

    pub(crate) fn set(&mut self, k: usize) {
        self.flags[k - 1] = true;
    }

    /// Set positions, ascending, 1-indexed.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| i + 1)
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }
}

impl fmt::Display for ChildMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.flags {
            f.write_char(if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for ChildMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChildMask({self})")
    }
}

/// Reusable buffers for the children scan.
#[derive(Debug, Default, Clone)]
pub(crate) struct ChildFinder {
    cand: Vec<u8>,
    parent: ParentScratch,
}

impl ChildFinder {
    fn is_child(&mut self, mem: &mut Membership, beta: &[u8]) -> bool {
        self.parent.compute(mem, &self.cand);
        self.parent.parent() == beta
    }

    /// Writes the child flags of `beta` (a member of A(n)) into `out`,
    /// 0-based. Scans only the three regions where children can live.
    pub(crate) fn find(&mut self, mem: &mut Membership, beta: &[u8], out: &mut [bool]) {
        let n = beta.len();
        out.iter_mut().for_each(|f| *f = false);

        // beta = 0^s 1 ...
        let s = beta.iter().position(|&b| b == 1).unwrap_or(n);
        // longest 0-run in b_{s+1} … b_n
        let mut s_prime = 0;
        let mut run = 0;
        for &b in &beta[s..] {
            if b == 0 {
                run += 1;
                s_prime = s_prime.max(run);
            } else {
                run = 0;
            }
        }

        // First 1: flip a 0 of the leading run so it becomes the first 1.
        let start = (s / 2).max(s_prime) + 1;
        for k in start..=s {
            self.cand.clear();
            self.cand.extend_from_slice(beta);
            self.cand[k - 1] = 1;
            if mem.is_asymmetric_bracelet(&self.cand) {
                out[k - 1] = true;
            } else if k > start {
                break;
            }
        }

        // Last 1: b_{k+1} … b_n 0^(k-1) 1.
        for k in 1..=s.div_ceil(2) {
            self.cand.clear();
            self.cand.extend_from_slice(&beta[k..]);
            self.cand.extend(std::iter::repeat_n(0, k - 1));
            self.cand.push(1);
            if mem.is_asymmetric_bracelet(&self.cand) {
                if self.is_child(mem, beta) {
                    out[k - 1] = true;
                }
            } else {
                break;
            }
        }

        // Last 0: only positions n-1 and n-2 can hold it.
        if n >= 3 && beta[n - 2] == 1 {
            self.cand.clear();
            self.cand.extend_from_slice(beta);
            self.cand[n - 2] = 0;
            if mem.is_asymmetric_bracelet(&self.cand) && self.is_child(mem, beta) {
                out[n - 2] = true;
            }
        }
        if n >= 3 && beta[n - 2] == 1 && beta[n - 3] == 1 {
            self.cand.clear();
            self.cand.extend_from_slice(beta);
            self.cand[n - 3] = 0;
            if mem.is_asymmetric_bracelet(&self.cand) && self.is_child(mem, beta) {
                out[n - 3] = true;
            }
        }
    }
}

/// Child mask of a tree node.
pub fn find_children(beta: &BinaryWord) -> Result<ChildMask> {
    find_children_counted(beta, &mut Membership::new())
}

/// [`find_children`] charging its membership tests to `mem`.
pub fn find_children_counted(beta: &BinaryWord, mem: &mut Membership) -> Result<ChildMask> {
    require_tree_node("find_children", beta)?;
    let mut flags = vec![false; beta.len()];
    ChildFinder::default().find(mem, beta.bits(), &mut flags);
    Ok(ChildMask::from_flags(flags))
}

// ---------------------------------------------------------------------------
// Explicit tree.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub label: BinaryWord,
    pub parent: Option<BinaryWord>,
    /// Position, in the child's own coordinates, whose flip leads to the parent.
    pub flip_index: Option<usize>,
    pub case: Option<ParentCase>,
}

impl TreeNode {
    pub fn is_periodic(&self) -> bool {
        necklace_period_of(self.label.bits()).is_some_and(|p| p < self.label.len())
    }
}

/// The materialized cycle-joining tree T_n.
#[derive(Debug, Clone)]
pub struct CycleJoinTree {
    n: usize,
    nodes: Vec<TreeNode>,
    parents: Vec<Option<usize>>,
    /// Children of each node as `(position in the parent's coordinates, child)`,
    /// sorted by position.
    children: Vec<Vec<(usize, usize)>>,
    index: HashMap<BinaryWord, usize>,
}

/// Materializes T_n by enumerating A(n) and applying the parent rule.
pub fn build_tree(n: usize) -> Result<CycleJoinTree> {
    if !(6..=TREE_LIMIT).contains(&n) {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "explicit trees are built for 6 <= n <= 20",
        });
    }
    let labels = asymmetric_bracelets(n);
    let index: HashMap<BinaryWord, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let root_label = root(n)?;
    let mut nodes = Vec::with_capacity(labels.len());
    let mut parents = vec![None; labels.len()];
    let mut children = vec![Vec::new(); labels.len()];

    for (i, label) in labels.iter().enumerate() {
        if *label == root_label {
            nodes.push(TreeNode {
                label: label.clone(),
                parent: None,
                flip_index: None,
                case: None,
            });
            continue;
        }
        let (p, case) = parent_with_case(label)?;
        let pi = *index
            .get(&p)
            .ok_or_else(|| Error::Internal(format!("parent {p} of {label} not in A(n)")))?;
        let flip_index = match case {
            ParentCase::FirstOne => label.bits().iter().position(|&b| b == 1).map(|i| i + 1),
            ParentCase::LastOne => Some(n),
            ParentCase::LastZero => label.bits().iter().rposition(|&b| b == 0).map(|i| i + 1),
        };
        let k = flip_position(&p, label).ok_or_else(|| {
            Error::Internal(format!("no single flip of {p} reaches the class of {label}"))
        })?;
        parents[i] = Some(pi);
        children[pi].push((k, i));
        nodes.push(TreeNode {
            label: label.clone(),
            parent: Some(p),
            flip_index,
            case: Some(case),
        });
    }
    for c in &mut children {
        c.sort_unstable();
    }
    Ok(CycleJoinTree {
        n,
        nodes,
        parents,
        children,
        index,
    })
}

/// Smallest position `k` such that flipping bit `k` of `from` lands in the
/// rotation class of the necklace `to`.
pub(crate) fn flip_position(from: &BinaryWord, to: &BinaryWord) -> Option<usize> {
    let mut buf = from.bits().to_vec();
    (0..buf.len()).find_map(|k| {
        buf[k] ^= 1;
        let start = least_rotation_start(&buf);
        let hit = buf[start..]
            .iter()
            .chain(&buf[..start])
            .eq(to.bits().iter());
        buf[k] ^= 1;
        hit.then_some(k + 1)
    })
}

impl CycleJoinTree {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Index of the root; always 0 since the root is the smallest member.
    pub fn root(&self) -> usize {
        0
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &TreeNode {
        &self.nodes[i]
    }

    pub fn find(&self, label: &BinaryWord) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn parent_of(&self, i: usize) -> Option<usize> {
        self.parents[i]
    }

    /// `(position in parent coordinates, child index)`, sorted by position.
    pub fn children_of(&self, i: usize) -> &[(usize, usize)] {
        &self.children[i]
    }

    pub fn depth(&self, mut i: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parents[i] {
            i = p;
            d += 1;
        }
        d
    }

    pub fn height(&self) -> usize {
        (0..self.len()).map(|i| self.depth(i)).max().unwrap_or(0)
    }

    /// Mask obtained by inverting the parent map at node `i`.
    pub fn child_mask(&self, i: usize) -> ChildMask {
        let mut mask = ChildMask::empty(self.n);
        for &(k, _) in &self.children[i] {
            mask.set(k);
        }
        mask
    }

    /// Graphviz rendering: one node per bracelet, parent → child edges
    /// tagged and colored by the parent-rule case.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph cycle_joining_tree_{} {{", self.n);
        let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
        let mut order = vec![self.root()];
        let mut head = 0;
        while head < order.len() {
            let i = order[head];
            head += 1;
            order.extend(self.children[i].iter().map(|&(_, c)| c));
        }
        for &i in &order {
            let _ = writeln!(out, "  \"{}\";", self.nodes[i].label);
        }
        for &i in &order {
            for &(k, c) in &self.children[i] {
                let case = self.nodes[c].case.expect("non-root nodes carry a case");
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}\", color={}, flip={}];",
                    self.nodes[i].label,
                    self.nodes[c].label,
                    case.tag(),
                    case.color(),
                    k
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{is_necklace, necklace_of};

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn all_necklaces(n: usize) -> Vec<BinaryWord> {
        let mut out = Vec::new();
        crate::word::for_each_necklace(n, |x, _| out.push(BinaryWord::from_bits(x).unwrap()));
        out
    }

    #[test]
    fn flip_examples() {
        assert_eq!(first_one(&w("010110111")).unwrap(), w("000110111"));
        assert_eq!(first_one(&w("000101111")).unwrap(), w("000001111"));
        assert_eq!(first_one(&w("001011")).unwrap(), w("000011"));
        assert_eq!(last_one(&w("000101111")).unwrap(), w("000010111"));
        assert_eq!(last_one(&w("001011")).unwrap(), w("000101"));
        assert_eq!(last_one(&w("0001011")).unwrap(), w("0000101"));
        assert_eq!(last_zero(&w("001011011")).unwrap(), w("001011111"));
        assert_eq!(last_zero(&w("000101111")).unwrap(), w("000111111"));
        assert_eq!(last_zero(&w("01")).unwrap(), w("11"));
    }

    #[test]
    fn first_zero_matches_rotation_oracle() {
        for s in ["001011", "000000001", "010101011"] {
            let x = w(s);
            assert_eq!(first_zero(&x).unwrap(), necklace_of(&x.flipped(1)), "{s}");
        }
        assert_eq!(first_zero(&w("000000001")).unwrap(), w("000000011"));
        assert!(first_zero(&w("111")).is_err());
    }

    #[test]
    fn flip_domain_errors() {
        assert!(first_one(&w("0000")).is_err());
        assert!(first_one(&w("1111")).is_err());
        assert!(last_one(&w("0001")).is_err());
        assert!(last_zero(&w("111")).is_err());
        assert!(first_one(&w("0110")).is_err(), "not a necklace");
    }

    #[test]
    fn flips_agree_with_rotation_oracle() {
        for n in 2..=14 {
            for x in all_necklaces(n) {
                let weight = x.weight();
                if weight >= 1 && weight < n {
                    let first = x.bits().iter().position(|&b| b == 1).unwrap() + 1;
                    let last0 = x.bits().iter().rposition(|&b| b == 0).unwrap() + 1;
                    let f1 = first_one(&x).unwrap();
                    assert_eq!(f1, x.flipped(first));
                    assert!(is_necklace(&f1), "{x}");
                    let l0 = last_zero(&x).unwrap();
                    assert_eq!(l0, x.flipped(last0));
                    assert!(is_necklace(&l0), "{x}");
                }
                if weight >= 2 && x.bit(n) == 1 {
                    assert_eq!(last_one(&x).unwrap(), necklace_of(&x.flipped(n)), "{x}");
                }
                if x.bit(1) == 0 {
                    assert_eq!(first_zero(&x).unwrap(), necklace_of(&x.flipped(1)));
                }
            }
        }
    }

    #[test]
    fn parent_examples() {
        assert_eq!(
            parent_with_case(&w("000101111")).unwrap(),
            (w("000010111"), ParentCase::LastOne)
        );
        assert_eq!(
            parent_with_case(&w("010110111")).unwrap(),
            (w("000110111"), ParentCase::FirstOne)
        );
        assert_eq!(
            parent_with_case(&w("001011011")).unwrap(),
            (w("001011111"), ParentCase::LastZero)
        );
        assert_eq!(
            parent_with_case(&w("000100111")).unwrap(),
            (w("000010011"), ParentCase::LastOne)
        );
    }

    #[test]
    fn parent_domain_errors() {
        assert!(parent(&w("000001011")).is_err(), "root");
        assert!(parent(&w("000001101")).is_err(), "not a bracelet");
        assert!(parent(&w("00101")).is_err(), "order too small");
    }

    #[test]
    fn root_examples() {
        assert_eq!(root(9).unwrap(), w("000001011"));
        assert_eq!(root(6).unwrap(), w("001011"));
        assert_eq!(root(20).unwrap().to_string(), format!("{}1011", "0".repeat(16)));
        assert!(root(5).is_err());
    }

    #[test]
    fn tree_sizes() {
        assert_eq!(build_tree(9).unwrap().len(), 14);
        assert_eq!(build_tree(6).unwrap().len(), 1);
        assert_eq!(build_tree(10).unwrap().len(), 30);
        assert!(build_tree(5).is_err());
        assert!(build_tree(21).is_err());
    }

    #[test]
    fn tree_of_order_nine_edges() {
        let t = build_tree(9).unwrap();
        assert_eq!(t.node(t.root()).label, w("000001011"));
        let edge = |c: &str| {
            let node = t.node(t.find(&w(c)).unwrap());
            (node.parent.clone().unwrap(), node.case.unwrap())
        };
        assert_eq!(edge("010110111"), (w("000110111"), ParentCase::FirstOne));
        assert_eq!(edge("000101111"), (w("000010111"), ParentCase::LastOne));
        assert_eq!(edge("001011011"), (w("001011111"), ParentCase::LastZero));
    }

    #[test]
    fn height_bound_and_reachability() {
        for n in 6..=16 {
            let t = build_tree(n).unwrap();
            assert!(t.height() < 2 * (n - 4), "n={n} height {}", t.height());
        }
    }

    #[test]
    fn lemma_two_third_case() {
        for n in 6..=14 {
            let r = root(n).unwrap();
            for alpha in asymmetric_bracelets(n).into_iter().filter(|a| *a != r) {
                let (_, case) = parent_with_case(&alpha).unwrap();
                if case != ParentCase::LastZero {
                    continue;
                }
                let j = alpha.bits().iter().rposition(|&b| b == 0).unwrap() + 1;
                assert!(j == n - 2 || j == n - 1, "{alpha}");
                let lz = last_zero(&alpha).unwrap();
                assert!(is_asymmetric_bracelet_bits(lz.bits()), "{alpha}");
                let lo = last_one(&lz).unwrap();
                assert!(is_asymmetric_bracelet_bits(lo.bits()), "{alpha}");
            }
        }
    }

    #[test]
    fn periodic_nodes_are_leaves_and_outnumbered() {
        for n in 6..=16 {
            let t = build_tree(n).unwrap();
            let mut periodic = 0;
            for (i, node) in t.nodes().iter().enumerate() {
                if node.is_periodic() {
                    periodic += 1;
                    assert!(t.children_of(i).is_empty(), "n={n} {}", node.label);
                }
            }
            assert!(periodic <= t.len() - periodic, "n={n}");
        }
    }

    #[test]
    fn find_children_examples() {
        assert_eq!(find_children(&w("001011")).unwrap().to_string(), "000000");
        let t = build_tree(9).unwrap();
        assert_eq!(find_children(&w("000001011")).unwrap(), t.child_mask(t.root()));
        assert!(find_children(&w("000001101")).is_err());
    }

    /// Brute force: flip every position and ask whether the resulting class is
    /// a node whose parent is `beta`.
    fn brute_mask(beta: &BinaryWord) -> ChildMask {
        let mut mask = ChildMask::empty(beta.len());
        let r = root(beta.len()).unwrap();
        for k in 1..=beta.len() {
            let cand = necklace_of(&beta.flipped(k));
            if cand != r
                && is_asymmetric_bracelet_bits(cand.bits())
                && parent(&cand).unwrap() == *beta
            {
                mask.set(k);
            }
        }
        mask
    }

    #[test]
    fn find_children_matches_parent_inversion() {
        for n in 6..=14 {
            let t = build_tree(n).unwrap();
            for (i, node) in t.nodes().iter().enumerate() {
                let fast = find_children(&node.label).unwrap();
                assert_eq!(fast, brute_mask(&node.label), "n={n} {}", node.label);
                assert_eq!(fast, t.child_mask(i), "n={n} {}", node.label);
                if node.is_periodic() {
                    assert_eq!(fast.count(), 0);
                }
            }
        }
    }

    #[test]
    fn find_children_work_is_linear_in_node_count() {
        let mut worst: f64 = 0.0;
        for n in 10..=18 {
            let mut mem = Membership::new();
            let nodes = asymmetric_bracelets(n);
            for beta in &nodes {
                find_children_counted(beta, &mut mem).unwrap();
            }
            let ratio = mem.tests() as f64 / nodes.len() as f64;
            worst = worst.max(ratio);
            assert!(ratio <= 8.0, "n={n}: {ratio} tests per node");
        }
        assert!(worst > 0.0);
    }

    #[test]
    fn dot_output_shape() {
        let dot = build_tree(9).unwrap().to_dot();
        assert_eq!(dot.matches(" -> ").count(), 13);
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";")).count(), 14);
        assert!(dot.contains("color=blue"));
        assert!(dot.contains("color=red"));
        assert!(dot.contains("label=\"first1\", color=black"));
    }
}
