//! Seeded RNG streams.
//!
//! Every randomized routine derives its generator from `(seed, stream)` so
//! that retries and trials are independent of execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn stream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Stream for a nested index, e.g. (retry, trial).
pub fn substream(seed: u64, outer: u64, inner: u64) -> Rng {
    stream(seed ^ outer.wrapping_mul(0x9E37_79B9_7F4A_7C15), inner)
}
