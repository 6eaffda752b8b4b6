use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The RNG used everywhere a seed is consumed. ChaCha8 output is stable
/// across platforms and crate versions.
pub type Rng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of stream `index` from a master seed.
pub fn mix(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_mul(GOLDEN)))
}

pub fn rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}
