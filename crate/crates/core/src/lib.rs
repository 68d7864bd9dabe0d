//! Chebyshev step-size schedules for gradient descent on convex quadratics.
//!
//! The crate covers the full loop from problem to schedule to solver:
//!
//! * [`linalg`]: dense symmetric kernels, Gaussian Gram-matrix problems,
//!   Jacobi eigenvalues and power-method estimates of the extreme eigenvalues.
//! * [`sched`]: Chebyshev steps, spectral radius of the `T`-step iteration
//!   map, its interval upper bound and the resulting convergence rates.
//! * [`solvers`]: gradient descent with cyclic schedules plus momentum and
//!   Chebyshev semi-iterative baselines, recorded as MSE traces.
//! * [`dugd`]: deep-unfolded gradient descent, i.e. learning the step sizes of
//!   an unrolled GD by minimizing the MSE with Adam and exact gradients.
//! * [`permute`]: orderings of a schedule (emulated incremental training and
//!   the affine permutation search that keeps transients small).

pub mod dugd;
pub mod error;
pub mod linalg;
pub mod permute;
pub mod rng;
pub mod sched;
pub mod solvers;

pub use error::{Error, Result};
