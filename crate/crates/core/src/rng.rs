//! Deterministic seeding.
//!
//! Randomised suites split their samples into fixed-size blocks; block `i`
//! draws from a ChaCha8 stream seeded with `splitmix64(master ^ i·γ)`, where
//! `γ = 0x9E37_79B9_7F4A_7C15`. Results therefore do not depend on how many
//! worker threads execute the blocks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(GOLDEN_GAMMA);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for block `index` of a suite driven by `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ index.wrapping_mul(GOLDEN_GAMMA))
}

pub fn block_rng(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, index))
}
