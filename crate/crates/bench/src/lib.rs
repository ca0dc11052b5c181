//! Shared inputs for the benchmarks.

use dqdyn::validation::{Sample, Sampler};

/// `count` seeded random motions for an `n`-joint chain.
pub fn samples(n: usize, count: usize, seed: u64) -> Vec<Sample> {
    let mut s = Sampler::new(seed);
    (0..count).map(|_| s.sample(n)).collect()
}
