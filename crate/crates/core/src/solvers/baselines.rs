//! Two-term (momentum) baselines: Polyak's heavy ball and the Chebyshev
//! semi-iterative method. Both start from `x^(−1) = 0`.

use super::gd::check_dim;
use super::trace::{Algorithm, Recorder, RunOptions, SolverTrace};
use crate::error::{Error, Result};
use crate::linalg::QuadraticProblem;
use crate::sched::rate_lower_bound;

/// How the Chebyshev semi-iterative method scales `A` before applying the
/// two-term recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChebSemiScaling {
    /// Base iteration `x ← x − ω(Ax − b)` with `ω = 2/(λ_min+λ_max)`, whose
    /// iteration matrix has spectrum in `[−ξ, ξ]` for `ξ = (κ−1)/(κ+1)`. The
    /// accelerated rate is then `(√κ−1)/(√κ+1)`.
    #[default]
    Symmetric,
    /// Base iteration with `ω = 1/λ_max` and `ξ = 1 − 1/κ`. The iteration
    /// matrix spectrum `[0, ξ]` is one-sided, so the asymptotic rate is only
    /// `ξ/(1 + √(1 − ξ²))`.
    Normalized,
}

/// Parameters shared by the momentum baselines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineParams {
    /// Heavy-ball step `4/(√λ_min + √λ_max)²`.
    pub gamma_prime: f64,
    /// Heavy-ball momentum `((√κ−1)/(√κ+1))²`.
    pub beta: f64,
    /// Bound on the spectral radius of the semi-iterative base iteration.
    pub xi: f64,
    /// Step `ω` of the semi-iterative base iteration.
    pub semi_step: f64,
}

impl BaselineParams {
    pub fn from_bounds(lambda_min: f64, lambda_max: f64) -> Result<Self> {
        Self::with_scaling(lambda_min, lambda_max, ChebSemiScaling::Symmetric)
    }

    pub fn with_scaling(
        lambda_min: f64,
        lambda_max: f64,
        scaling: ChebSemiScaling,
    ) -> Result<Self> {
        if !(lambda_min > 0.0 && lambda_min <= lambda_max && lambda_max.is_finite()) {
            return Err(Error::DegenerateSpectrum {
                lambda_min,
                lambda_max,
            });
        }
        let kappa = lambda_max / lambda_min;
        let (xi, semi_step) = match scaling {
            ChebSemiScaling::Symmetric => (
                (kappa - 1.0) / (kappa + 1.0),
                2.0 / (lambda_min + lambda_max),
            ),
            ChebSemiScaling::Normalized => (1.0 - 1.0 / kappa, 1.0 / lambda_max),
        };
        let root = lambda_min.sqrt() + lambda_max.sqrt();
        Ok(Self {
            gamma_prime: 4.0 / (root * root),
            beta: rate_lower_bound(kappa).powi(2),
            xi,
            semi_step,
        })
    }
}

/// Heavy ball: `x^(t+1) = x^(t) − γ′(A x^(t) − b) + β(x^(t) − x^(t−1))`.
pub fn run_momentum(
    problem: &QuadraticProblem,
    params: &BaselineParams,
    x0: &[f64],
    total_iters: usize,
) -> Result<SolverTrace> {
    run_momentum_with(problem, params, x0, total_iters, RunOptions::default())
}

pub fn run_momentum_with(
    problem: &QuadraticProblem,
    params: &BaselineParams,
    x0: &[f64],
    total_iters: usize,
    options: RunOptions,
) -> Result<SolverTrace> {
    check_dim(problem, x0)?;
    let mut rec = Recorder::new(Algorithm::Momentum, None, options, total_iters);
    two_term(problem, x0, total_iters, &mut rec, |_| {
        (params.gamma_prime, params.beta)
    })?;
    Ok(rec.finish())
}

/// Weights `w_1 = 1`, `w_2 = 2/(2 − ξ²)`, `w_{t+1} = 4/(4 − ξ² w_t)`,
/// returned as `[w_1, …, w_count]`.
pub fn cheb_semi_weights(xi: f64, count: usize) -> Vec<f64> {
    let xi2 = xi * xi;
    let mut w = Vec::with_capacity(count);
    for t in 1..=count {
        let next = match t {
            1 => 1.0,
            2 => 2.0 / (2.0 - xi2),
            _ => 4.0 / (4.0 - xi2 * w[t - 2]),
        };
        w.push(next);
    }
    w
}

/// Chebyshev semi-iterative method with symmetric scaling for the interval
/// `[lambda_min, lambda_max]`.
pub fn run_cheb_semi(
    problem: &QuadraticProblem,
    lambda_min: f64,
    lambda_max: f64,
    x0: &[f64],
    total_iters: usize,
) -> Result<SolverTrace> {
    if !(lambda_min < lambda_max) {
        return Err(Error::DegenerateSpectrum {
            lambda_min,
            lambda_max,
        });
    }
    let params = BaselineParams::from_bounds(lambda_min, lambda_max)?;
    run_cheb_semi_with(problem, &params, x0, total_iters, RunOptions::default())
}

/// `x^(t+1) = x^(t) − w_{t+1} ω (A x^(t) − b) + (w_{t+1} − 1)(x^(t) − x^(t−1))`;
/// the first update uses `w_1 = 1`.
pub fn run_cheb_semi_with(
    problem: &QuadraticProblem,
    params: &BaselineParams,
    x0: &[f64],
    total_iters: usize,
    options: RunOptions,
) -> Result<SolverTrace> {
    check_dim(problem, x0)?;
    let weights = cheb_semi_weights(params.xi, total_iters);
    let mut rec = Recorder::new(Algorithm::ChebSemi, None, options, total_iters);
    two_term(problem, x0, total_iters, &mut rec, |t| {
        let w = weights[t];
        (w * params.semi_step, w - 1.0)
    })?;
    Ok(rec.finish())
}

/// `x^(t+1) = x^(t) − a_t (A x^(t) − b) + m_t (x^(t) − x^(t−1))` with
/// `(a_t, m_t) = coeffs(t)` and `x^(−1) = 0`.
fn two_term(
    problem: &QuadraticProblem,
    x0: &[f64],
    total_iters: usize,
    rec: &mut Recorder,
    coeffs: impl Fn(usize) -> (f64, f64),
) -> Result<()> {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut prev = vec![0.0; n];
    let mut g = vec![0.0; n];
    rec.record(0, &x);
    for t in 0..total_iters {
        problem.gradient(&x, &mut g)?;
        let (step, momentum) = coeffs(t);
        for i in 0..n {
            let next = x[i] - step * g[i] + momentum * (x[i] - prev[i]);
            prev[i] = x[i];
            x[i] = next;
        }
        rec.record(t + 1, &x);
    }
    Ok(())
}
