//! Power iteration for the extreme eigenvalues of a positive definite matrix.
//!
//! Each iteration costs one matrix–vector product, so both extreme
//! eigenvalues are available in `O(n²)` per step without a full
//! decomposition. The smallest eigenvalue comes from iterating on the
//! shifted matrix `sI − A`, whose dominant eigenvalue is `s − λ_min`.

use super::dense::{dot_unchecked, norm2};
use super::problem::QuadraticProblem;
use crate::error::{Error, Result};
use crate::rng::{gaussian_vec, seeded};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Relative inflation applied to the `λ_max` estimate before shifting.
pub const SHIFT_SAFEGUARD: f64 = 1e-6;

/// Estimate of `λ_max`. Stops when the Rayleigh quotient changes by less
/// than `tol` relative between consecutive iterations.
pub fn power_method_max(
    problem: &QuadraticProblem,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> Result<f64> {
    iterate(
        problem.dim(),
        |x, out| problem.apply(x, out),
        tol,
        max_iter,
        seed,
        "power_method_max",
        0.0,
    )
}

/// Estimate of `λ_min` from power iteration on `sI − A` with
/// `s = lambda_max_estimate · (1 + 1e-6)`. The change of the
/// Rayleigh quotient is measured relative to the returned `λ_min`. The change of the
/// Rayleigh quotient is measured relative to the returned `λ_min`.
pub fn power_method_min(
    problem: &QuadraticProblem,
    lambda_max_estimate: f64,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> Result<f64> {
    if !(lambda_max_estimate > 0.0) || !lambda_max_estimate.is_finite() {
        return Err(Error::InvalidParams(format!(
            "lambda_max estimate must be positive, got {lambda_max_estimate}"
        )));
    }
    let shift = lambda_max_estimate * (1.0 + SHIFT_SAFEGUARD);
    let dominant = iterate(
        problem.dim(),
        |x, out| {
            problem.apply(x, out)?;
            for (o, xi) in out.iter_mut().zip(x) {
                *o = shift * xi - *o;
            }
            Ok(())
        },
        tol,
        max_iter,
        seed,
        "power_method_min",
        shift,
    )?;
    Ok(shift - dominant)
}

fn iterate(
    n: usize,
    mut apply: impl FnMut(&[f64], &mut [f64]) -> Result<()>,
    tol: f64,
    max_iter: usize,
    seed: u64,
    method: &'static str,
    shift: f64,
) -> Result<f64> {
    let mut v = gaussian_vec(&mut seeded(seed), n, 0.0, 1.0);
    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut w = vec![0.0; n];
    let mut previous: Option<f64> = None;

    for _ in 0..max_iter {
        apply(&v, &mut w)?;
        let q = dot_unchecked(&v, &w);
        let nw = norm2(&w);
        if nw <= 1e-14 * shift.abs() || nw == 0.0 {
            return Err(Error::DegenerateShift);
        }
        if let Some(p) = previous {
            let step = (q - p).abs();
            if step <= tol * (shift - q).abs() || step <= 4.0 * f64::EPSILON * q.abs() {
                return Ok(q);
            }
        }
        previous = Some(q);
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / nw;
        }
    }
    Err(Error::NonConvergence {
        method,
        iterations: max_iter,
    })
}
