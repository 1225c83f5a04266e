//! Deterministic seeding for trials and perturbations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

/// 64-bit FNV-1a.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(*b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Combines a base seed with labels and indices into one stream seed.
pub fn derive_seed(seed: u64, label: &str, index: u64) -> u64 {
    mix(mix(seed ^ fnv1a(label.as_bytes())).wrapping_add(index))
}

pub fn stream(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, label, index))
}

/// Integer in `[-bound, bound]` as a scalar.
pub fn small_scalar(rng: &mut impl Rng, bound: i64) -> Scalar {
    Scalar::from_int(rng.gen_range(-bound..=bound))
}
