//! Orderings of Chebyshev steps.
//!
//! Any order gives the same iteration map after a full period, but the
//! partial products in between can grow by orders of magnitude. This module
//! provides the affine index permutations `π(t+1) ≡ aπ(t) + b (mod T)`, a
//! search over them minimizing the largest prefix bound, and an emulation of
//! the order that incremental training settles on.

mod affine;
mod emulate;

pub use affine::{
    admissible_triples, affine_permutation, permutation_search, temporal_spectral_radius,
    triple_objective, AffinePermutation, PermutationSearch,
};
pub use emulate::{emulate_incremental, EMULATION_CAP};
