//! Seeded random streams.
//!
//! Every stochastic routine takes a caller-owned stream. Independent
//! streams for parallel work are derived from a 64-bit base seed with
//! [`derive_seed`], so a replication's draws depend only on
//! `(base_seed, indices)` and never on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The stream type used throughout the crate.
pub type Stream = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finaliser.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed: `s ← splitmix64(s ⊕ splitmix64(i))` for each index `i`.
pub fn derive_seed(seed: u64, indices: &[u64]) -> u64 {
    indices
        .iter()
        .fold(splitmix64(seed), |s, &i| splitmix64(s ^ splitmix64(i)))
}

/// A stream seeded directly from `seed`.
pub fn stream(seed: u64) -> Stream {
    Stream::seed_from_u64(seed)
}

/// The stream for `indices` under `seed`, e.g. `(sample size, replication)`.
pub fn substream(seed: u64, indices: &[u64]) -> Stream {
    stream(derive_seed(seed, indices))
}
