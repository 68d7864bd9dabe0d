//! Seedable random source used everywhere randomness is needed.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded from a `u64`,
//! and Gaussian variates come from `rand_distr::StandardNormal` (ziggurat).
//! Both are portable and value-stable, so a given seed produces the same
//! matrices, initial points and minibatches on every platform. Generators are
//! always owned by the caller; nothing in this crate keeps global RNG state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Vector of i.i.d. `N(mean, std²)` entries.
pub fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, len: usize, mean: f64, std: f64) -> Vec<f64> {
    (0..len)
        .map(|_| mean + std * standard_normal(rng))
        .collect()
}
