//! Sharded set products. Each worker owns a private bitset over one index range of the
//! previous layer; results are OR-merged, so the output does not depend on the worker count.

use std::thread;

use nilprod_core::nilfactor::{census_sets_with, product_step};
use nilprod_core::{BitSet, Mat2, NilError, Ring};

/// Splits `[0, len)` into at most `parts` word-aligned ranges.
fn shards(len: u64, parts: usize) -> Vec<(u64, u64)> {
    let parts = parts.max(1) as u64;
    let words = len.div_ceil(64);
    let per = words.div_ceil(parts).max(1) * 64;
    (0..parts)
        .map(|i| (i * per, ((i + 1) * per).min(len)))
        .filter(|(a, b)| a < b)
        .collect()
}

pub fn product_step_threaded(ring: &Ring, prev: &BitSet, factors: &[Mat2], threads: usize) -> BitSet {
    let ranges = shards(prev.len(), threads);
    if ranges.len() <= 1 {
        return product_step(ring, prev, factors, 0, prev.len());
    }
    let parts: Vec<BitSet> = thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(start, end)| scope.spawn(move || product_step(ring, prev, factors, start, end)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut merged = BitSet::new(prev.len());
    for part in &parts {
        merged.union_with(part);
    }
    merged
}

/// `S_s` computed with `threads` workers per round.
pub fn census_set_product_threaded(
    ring: &Ring,
    s: u32,
    cap: u64,
    threads: usize,
) -> Result<BitSet, NilError> {
    census_sets_with(ring, s, cap, |prev, nil| {
        product_step_threaded(ring, prev, nil, threads)
    })
}
