//! Seeded random generation.
//!
//! Every randomized path draws from ChaCha8 seeded with a 64-bit seed through
//! `SeedableRng::seed_from_u64`. Bounded integers are drawn as `u64` with
//! rand's rejection-based uniform sampler, so a seed yields the same stream on
//! every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Generator = ChaCha8Rng;

pub fn generator(seed: u64) -> Generator {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for trial `trial` of a run seeded with `seed` (SplitMix64 finalizer).
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw from `0..n`. `n` must be positive.
pub fn uniform_below(rng: &mut Generator, n: usize) -> usize {
    rng.gen_range(0..n as u64) as usize
}
