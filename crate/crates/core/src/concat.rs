//! Concatenation-tree traversal.
//!
//! The concatenation tree relabels each node of the cycle-joining tree by a
//! rotation that differs from its parent's label in exactly one position,
//! the node's change index. Children with a smaller change index than their
//! parent are left-children, larger ones right-children, each list ordered
//! by index. Visiting right-children, then the node, then left-children and
//! printing each label's aperiodic prefix yields the same cycle as the
//! successor rule.

use crate::bounds::trivial_upper_bound;
use crate::cyclejoin::{build_tree, root, ChildFinder, CycleJoinTree};
use crate::error::{Error, Result};
use crate::sequence::{BitSink, CyclicSequence, Mode};
use crate::word::{least_rotation_start, necklace_period_of, BinaryWord, Membership};

fn check_order(n: usize) -> Result<()> {
    if n < 6 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "orientable sequences are constructed for n >= 6",
        });
    }
    // Keep the output length addressable as u64 bit counts.
    trivial_upper_bound(n).map(|_| ())
}

/// A node of the explicit concatenation tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcatNode {
    /// A rotation of a member of A(n), not necessarily in necklace form.
    pub label: BinaryWord,
    /// 1-indexed position where the label differs from the parent's; `n` at the root.
    pub change_index: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// The concatenation tree, materialized from the cycle-joining tree.
#[derive(Debug, Clone)]
pub struct ConcatTree {
    nodes: Vec<ConcatNode>,
}

impl ConcatTree {
    /// Relabels `tree` top-down. A child of the node labeled `x` is the
    /// single-bit flip of `x` that lands in the child's rotation class;
    /// positions are found by trying every flip, independently of the
    /// children scan used by [`fast_rcl`].
    pub fn from_cycle_join(tree: &CycleJoinTree) -> Result<Self> {
        let n = tree.order();
        let mut nodes = vec![None; tree.len()];
        nodes[tree.root()] = Some(ConcatNode {
            label: tree.node(tree.root()).label.clone(),
            change_index: n,
            left: Vec::new(),
            right: Vec::new(),
        });
        let mut queue = vec![tree.root()];
        while let Some(v) = queue.pop() {
            let node: &ConcatNode = nodes[v].as_ref().unwrap();
            let (label, c) = (node.label.clone(), node.change_index);
            let mut left = Vec::new();
            let mut right = Vec::new();
            for k in 1..=n {
                let flipped = label.flipped(k);
                let neck = crate::word::necklace_of(&flipped);
                let Some(u) = tree.find(&neck) else { continue };
                if tree.parent_of(u) != Some(v) {
                    continue;
                }
                if nodes[u].is_some() {
                    return Err(Error::Internal(format!(
                        "two flips of {label} reach the class of {neck}"
                    )));
                }
                nodes[u] = Some(ConcatNode {
                    label: flipped,
                    change_index: k,
                    left: Vec::new(),
                    right: Vec::new(),
                });
                if k < c {
                    left.push(u);
                } else {
                    right.push(u);
                }
                queue.push(u);
            }
            let node = nodes[v].as_mut().unwrap();
            node.left = left;
            node.right = right;
        }
        let nodes = nodes
            .into_iter()
            .enumerate()
            .map(|(i, node)| {
                node.ok_or_else(|| Error::Internal(format!("node {i} unreachable by flips")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { nodes })
    }

    /// Shares node indices with the source tree, so the root is 0.
    pub fn root(&self) -> usize {
        0
    }

    pub fn nodes(&self) -> &[ConcatNode] {
        &self.nodes
    }

    /// Node indices in right-current-left order.
    pub fn rcl_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        self.visit(self.root(), &mut out);
        out
    }

    fn visit(&self, v: usize, out: &mut Vec<usize>) {
        for &u in &self.nodes[v].right {
            self.visit(u, out);
        }
        out.push(v);
        for &u in &self.nodes[v].left {
            self.visit(u, out);
        }
    }
}

/// Reference RCL sequence, from the explicit concatenation tree.
pub fn rcl_sequence(n: usize) -> Result<CyclicSequence> {
    check_order(n)?;
    let tree = ConcatTree::from_cycle_join(&build_tree(n)?)?;
    let mut bits = Vec::new();
    for v in tree.rcl_order() {
        let label = tree.nodes[v].label.bits();
        let p = necklace_period_of(&rotate_to_necklace(label)).unwrap_or(label.len());
        bits.extend_from_slice(&label[..p]);
    }
    Ok(CyclicSequence::from_vec_unchecked(bits, Mode::Cyclic))
}

fn rotate_to_necklace(w: &[u8]) -> Vec<u8> {
    let s = least_rotation_start(w);
    let mut v = w[s..].to_vec();
    v.extend_from_slice(&w[..s]);
    v
}

/// Work counters from one traversal.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct RclStats {
    pub bits: u64,
    pub nodes: u64,
    pub membership_tests: u64,
    /// Deepest recursion level reached; the root is level 1.
    pub max_depth: usize,
}

struct Traversal<'a, S: BitSink> {
    n: usize,
    label: Vec<u8>,
    neck: Vec<u8>,
    /// One child mask per recursion level, so no level allocates.
    masks: Vec<Vec<bool>>,
    finder: ChildFinder,
    mem: Membership,
    sink: &'a mut S,
    stats: RclStats,
}

impl<S: BitSink> Traversal<'_, S> {
    fn visit(&mut self, change: usize, depth: usize) {
        let n = self.n;
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);

        let off = least_rotation_start(&self.label);
        self.neck.clear();
        self.neck.extend_from_slice(&self.label[off..]);
        self.neck.extend_from_slice(&self.label[..off]);
        let p = necklace_period_of(&self.neck).unwrap_or(n);
        if p < n {
            self.sink.push_bits(&self.label[..p]);
            self.stats.bits += p as u64;
            return;
        }

        if self.masks.len() < depth {
            self.masks.push(vec![false; n]);
        }
        let mut found = std::mem::take(&mut self.masks[depth - 1]);
        // Reuse `found` as scratch for the necklace-order flags, then map
        // them back to label positions in place.
        self.finder.find(&mut self.mem, &self.neck, &mut found);
        found.rotate_right(off);

        for i in change + 1..=n {
            if found[i - 1] {
                self.label[i - 1] ^= 1;
                self.visit(i, depth + 1);
                self.label[i - 1] ^= 1;
            }
        }
        self.sink.push_bits(&self.label);
        self.stats.bits += n as u64;
        for i in 1..change {
            if found[i - 1] {
                self.label[i - 1] ^= 1;
                self.visit(i, depth + 1);
                self.label[i - 1] ^= 1;
            }
        }
        self.masks[depth - 1] = found;
    }
}

/// Streams the RCL sequence into `sink`, finding children on the fly.
pub fn fast_rcl(n: usize, sink: &mut impl BitSink) -> Result<()> {
    fast_rcl_with_stats(n, sink).map(|_| ())
}

/// [`fast_rcl`], also returning its work counters.
pub fn fast_rcl_with_stats(n: usize, sink: &mut impl BitSink) -> Result<RclStats> {
    check_order(n)?;
    let mut t = Traversal {
        n,
        label: root(n)?.into_bits(),
        neck: Vec::with_capacity(n),
        masks: Vec::new(),
        finder: ChildFinder::default(),
        mem: Membership::new(),
        sink,
        stats: RclStats::default(),
    };
    t.visit(n, 1);
    let mut stats = t.stats;
    stats.membership_tests = t.mem.tests();
    Ok(stats)
}

/// [`fast_rcl`] collected into a sequence.
pub fn fast_rcl_sequence(n: usize) -> Result<CyclicSequence> {
    let mut bits = Vec::new();
    fast_rcl(n, &mut bits)?;
    Ok(CyclicSequence::from_vec_unchecked(bits, Mode::Cyclic))
}
