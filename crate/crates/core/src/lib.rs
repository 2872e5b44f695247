//! Orientable binary sequences built by cycle-joining asymmetric bracelets.
//!
//! An orientable sequence of order `n` is a cyclic binary sequence in which
//! every length-`n` window occurs at most once when reading in either
//! direction. This crate builds such sequences of length `L_n` two ways (a
//! successor rule and a concatenation-tree traversal), checks them against
//! brute-force oracles, computes the known length bounds, and searches for
//! longer cyclic and acyclic sequences.

pub mod bounds;
pub mod concat;
pub mod cyclejoin;
mod error;
pub mod search;
pub mod sequence;
pub mod successor;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use sequence::{BitSink, CyclicSequence, Mode};
pub use word::BinaryWord;
