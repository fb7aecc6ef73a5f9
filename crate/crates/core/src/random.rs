//! Seeded randomness. Every random choice derives from a 64-bit seed and a
//! stream tag, so a recorded seed replays the whole run.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default bound for random integer coefficients.
pub const DEFAULT_COEFF_BOUND: i64 = 7;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// A child seed for the computation labelled `tag`.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    rng(seed, tag.wrapping_add(0x9e37_79b9_7f4a_7c15)).next_u64()
}

/// Uniform on the nonzero integers of `[-bound, bound]`.
pub fn nonzero_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    assert!(bound >= 1, "coefficient bound must be positive");
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}
