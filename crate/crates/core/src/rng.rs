//! Seeded random streams.
//!
//! Every stochastic routine draws from [`ChaCha8Rng`]. A run is identified by
//! a `(seed, stream)` pair: the seed keys the generator and the stream id picks
//! one of its 2^64 independent streams. Trials use their index as stream id, so
//! aggregate results do not depend on the order in which workers finish.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type LabRng = ChaCha8Rng;

/// Generator for stream `stream` under `seed`.
pub fn substream(seed: u64, stream: u64) -> LabRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Generator for the default stream of `seed`.
pub fn seeded(seed: u64) -> LabRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive a child seed, used when one experiment feeds several sub-runs.
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    // splitmix64 finaliser over the pair
    let mut z = seed ^ label.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
