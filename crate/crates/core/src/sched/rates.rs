//! Closed-form bounds and asymptotic convergence rates as functions of the
//! condition number `κ = λ_max/λ_min`.

use rand::Rng;

use super::radius::rho_upper_interval;
use super::schedule::check_interval;
use crate::error::Result;
use crate::linalg::Spectrum;
use crate::rng::seeded;

/// Absolute slack allowed for grid-based interval maxima when comparing them
/// against closed forms.
pub const GRID_TOLERANCE: f64 = 1e-6;

/// `(√κ − 1)/(√κ + 1)`, written as `(κ − 1)/(√κ + 1)²` to keep precision near `κ = 1`.
fn chebyshev_ratio(kappa: f64) -> f64 {
    debug_assert!(kappa >= 1.0, "condition number below one: {kappa}");
    let s = kappa.sqrt();
    (kappa - 1.0) / ((s + 1.0) * (s + 1.0))
}

/// Interval bound of the Chebyshev schedule of length `T`:
///
/// `{ ½ [ ((√κ+1)/(√κ−1))^T + ((√κ−1)/(√κ+1))^T ] }⁻¹ = 2rᵀ / (1 + r²ᵀ)`
/// with `r = (√κ−1)/(√κ+1) < 1`. The right-hand form cannot overflow.
pub fn cheb_upper_closed_form(len: usize, kappa: f64) -> f64 {
    let r = chebyshev_ratio(kappa);
    let rt = pow_log(r, len as f64);
    2.0 * rt / (1.0 + rt * rt)
}

/// `r^t` through `exp(t · ln r)`; exact zero for `r = 0`.
fn pow_log(r: f64, t: f64) -> f64 {
    if r == 0.0 {
        0.0
    } else {
        (t * r.ln()).exp()
    }
}

/// Per-iteration upper bound on the convergence rate of cyclic CHGD,
/// `cheb_upper_closed_form(T, κ)^(1/T)`, evaluated in the log domain.
pub fn rate_chgd_upper(len: usize, kappa: f64) -> f64 {
    let r = chebyshev_ratio(kappa);
    if r == 0.0 {
        return 0.0;
    }
    let t = len as f64;
    let log_rt = t * r.ln();
    let log_bound = std::f64::consts::LN_2 + log_rt - (2.0 * log_rt).exp().ln_1p();
    (log_bound / t).exp()
}

/// `(κ − 1)/(κ + 1)`, the rate of GD with the optimal constant step.
pub fn rate_constant(kappa: f64) -> f64 {
    (kappa - 1.0) / (kappa + 1.0)
}

/// `(√κ − 1)/(√κ + 1)`, the lower bound on the rate of first-order methods.
pub fn rate_lower_bound(kappa: f64) -> f64 {
    chebyshev_ratio(kappa)
}

/// Both sides of `ρ(Q) ≤ C·√(n·L)` relating the spectral radius to the
/// expected MSE loss after `T` steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Constant of the radius/MSE bound for i.i.d. Gaussian initial points with
/// unit mean and unit variance.
pub const UNIT_GAUSSIAN_BOUND_CONSTANT: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn mse_bound_check(
    steps: &[f64],
    spectrum: &Spectrum,
    empirical_mse: f64,
    constant: f64,
) -> BoundCheck {
    let lhs = super::radius::spectral_radius(steps, spectrum.eigenvalues());
    let rhs = constant * (spectrum.len() as f64 * empirical_mse).sqrt();
    BoundCheck {
        lhs,
        rhs,
        holds: lhs <= rhs,
    }
}

/// Draws `trials` random step vectors with entries in `(0, 2/λ_min)` and
/// checks that none has an interval bound below the Chebyshev bound (less
/// [`GRID_TOLERANCE`]). Returns `true` when the Chebyshev steps are unbeaten.
pub fn minimax_competitor_test(
    len: usize,
    lambda_min: f64,
    lambda_max: f64,
    trials: usize,
    seed: u64,
) -> Result<bool> {
    check_interval(lambda_min, lambda_max)?;
    let bound = cheb_upper_closed_form(len, lambda_max / lambda_min);
    let mut rng = seeded(seed);
    let upper = 2.0 / lambda_min;
    let mut steps = vec![0.0; len];
    for _ in 0..trials {
        for g in steps.iter_mut() {
            *g = loop {
                let v = rng.random::<f64>() * upper;
                if v > 0.0 {
                    break v;
                }
            };
        }
        if competitor_beats(&steps, lambda_min, lambda_max, bound)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `steps` achieve an interval bound strictly below `bound` by more
/// than the grid tolerance.
pub fn competitor_beats(
    steps: &[f64],
    lambda_min: f64,
    lambda_max: f64,
    bound: f64,
) -> Result<bool> {
    Ok(rho_upper_interval(steps, lambda_min, lambda_max)? < bound - GRID_TOLERANCE)
}
