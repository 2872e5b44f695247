//! Wall-clock cost per generated bit, shared by `bench` and the acceptance
//! checks.

use std::hint::black_box;
use std::time::{Duration, Instant};

use orientable::concat::fast_rcl;
use orientable::sequence::CountingSink;
use orientable::successor::SuccessorGenerator;

/// Bits streamed per successor-rule measurement.
pub const SUCCESSOR_BITS: u64 = 1 << 17;

const TRIALS: usize = 5;
/// Repeat short runs until one trial lasts at least this long.
const MIN_TRIAL: Duration = Duration::from_millis(20);

/// Best-of-trials average of `f`, where `f` returns the bits it produced.
fn best_ns_per_bit(mut f: impl FnMut() -> orientable::Result<u64>) -> orientable::Result<f64> {
    let mut best = f64::INFINITY;
    for _ in 0..TRIALS {
        let start = Instant::now();
        let mut bits = 0u64;
        while start.elapsed() < MIN_TRIAL || bits == 0 {
            bits += f()?;
        }
        let ns = start.elapsed().as_nanos() as f64 / bits as f64;
        best = best.min(ns);
    }
    Ok(best)
}

/// Successor rule, streaming `bits` bits from the default seed.
pub fn successor_ns_per_bit(n: usize, bits: u64) -> orientable::Result<f64> {
    best_ns_per_bit(|| {
        let mut sink = CountingSink::default();
        SuccessorGenerator::new(n, None)?.emit(bits, &mut sink);
        Ok(black_box(sink).bits)
    })
}

/// One full concatenation-tree traversal.
pub fn rcl_ns_per_bit(n: usize) -> orientable::Result<f64> {
    best_ns_per_bit(|| {
        let mut sink = CountingSink::default();
        fast_rcl(n, &mut sink)?;
        Ok(black_box(sink).bits)
    })
}
