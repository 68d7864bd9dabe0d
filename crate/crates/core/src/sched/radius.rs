//! Spectral radius of the `T`-step GD iteration map and its interval bound.
//!
//! The iteration map `Q = ∏(I − γ_t A)` is never formed. It is diagonal in
//! the eigenbasis of `A` with entries `∏(1 − γ_t λ_i)`, so its spectral radius
//! is the largest absolute value of that polynomial over the eigenvalues, and
//! the interval bound replaces the eigenvalues by all of `[λ_min, λ_max]`.

use super::schedule::{check_interval, StepSchedule};
use crate::error::Result;
use crate::linalg::Spectrum;

/// Number of uniform grid points (endpoints included) for interval maxima.
pub const GRID_POINTS: usize = 4096;

/// Golden-section refinement stops when the bracket is this fraction of the
/// interval width.
pub const REFINE_TOL: f64 = 1e-10;

/// `∏(1 − γ_t λ)`.
pub fn step_polynomial(steps: &[f64], lambda: f64) -> f64 {
    steps.iter().map(|g| 1.0 - g * lambda).product()
}

/// `max_i |∏_t (1 − γ_t λ_i)|`.
pub fn spectral_radius(steps: &[f64], eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .map(|&l| step_polynomial(steps, l).abs())
        .fold(0.0, f64::max)
}

/// `max_{λ ∈ [lo, hi]} |∏_t (1 − γ_t λ)|` by grid search plus golden-section
/// refinement of the best bracket.
pub fn rho_upper_interval(steps: &[f64], lambda_min: f64, lambda_max: f64) -> Result<f64> {
    check_interval(lambda_min, lambda_max)?;
    let grid = Grid::new(lambda_min, lambda_max);
    let mut best = (0, -1.0);
    for i in 0..GRID_POINTS {
        let v = step_polynomial(steps, grid.at(i)).abs();
        if v > best.1 {
            best = (i, v);
        }
    }
    Ok(grid.refine(best.0, best.1, |l| step_polynomial(steps, l).abs()))
}

/// Interval maximum of every prefix product: entry `t` is
/// `max_{λ ∈ [lo, hi]} |∏_{t' ≤ t} (1 − γ_{t'} λ)|`.
pub fn prefix_interval_maxima(steps: &[f64], lambda_min: f64, lambda_max: f64) -> Result<Vec<f64>> {
    check_interval(lambda_min, lambda_max)?;
    let grid = Grid::new(lambda_min, lambda_max);
    let mut best = vec![(0usize, -1.0f64); steps.len()];
    for i in 0..GRID_POINTS {
        let lambda = grid.at(i);
        let mut p = 1.0;
        for (t, g) in steps.iter().enumerate() {
            p *= 1.0 - g * lambda;
            let v = p.abs();
            if v > best[t].1 {
                best[t] = (i, v);
            }
        }
    }
    Ok(best
        .iter()
        .enumerate()
        .map(|(t, &(i, v))| grid.refine(i, v, |l| step_polynomial(&steps[..=t], l).abs()))
        .collect())
}

struct Grid {
    lo: f64,
    hi: f64,
    h: f64,
}

impl Grid {
    fn new(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            h: (hi - lo) / (GRID_POINTS - 1) as f64,
        }
    }

    fn at(&self, i: usize) -> f64 {
        if i == GRID_POINTS - 1 {
            self.hi
        } else {
            self.lo + self.h * i as f64
        }
    }

    /// Golden-section search for the maximum of `f` between the neighbours of
    /// grid point `i`; never returns less than the grid value.
    fn refine(&self, i: usize, grid_value: f64, f: impl Fn(f64) -> f64) -> f64 {
        let mut a = self.at(i.saturating_sub(1));
        let mut b = self.at((i + 1).min(GRID_POINTS - 1));
        let tol = REFINE_TOL * (self.hi - self.lo);
        let ratio = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = b - ratio * (b - a);
        let mut d = a + ratio * (b - a);
        let (mut fc, mut fd) = (f(c), f(d));
        while b - a > tol {
            if fc >= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - ratio * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + ratio * (b - a);
                fd = f(d);
            }
        }
        grid_value.max(fc).max(fd).max(f(a)).max(f(b))
    }
}

/// Spectral characteristics of a schedule on a given spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSummary {
    /// Spectral radius of the `T`-step iteration map on the actual eigenvalues.
    pub rho: f64,
    /// Maximum of the step polynomial over `[λ_min, λ_max]` of the spectrum.
    pub rho_upper_interval: f64,
    /// Closed-form interval bound, for Chebyshev schedules only.
    pub rho_upper_closed: Option<f64>,
    /// `rho^(1/T)`.
    pub rate_per_iteration: f64,
}

impl StepSchedule {
    pub fn spectral_radius(&self, spectrum: &Spectrum) -> f64 {
        spectral_radius(self.steps(), spectrum.eigenvalues())
    }

    /// Interval bound over the interval the schedule was built for.
    pub fn rho_upper(&self) -> Result<f64> {
        rho_upper_interval(self.steps(), self.lambda_min(), self.lambda_max())
    }

    pub fn summarize(&self, spectrum: &Spectrum) -> Result<SpectralSummary> {
        let rho = self.spectral_radius(spectrum);
        let lo = spectrum.lambda_min();
        let hi = spectrum.lambda_max();
        let interval = if lo < hi {
            rho_upper_interval(self.steps(), lo, hi)?
        } else {
            rho
        };
        let closed = (self.origin() == super::Origin::Chebyshev
            && self.lambda_min() < self.lambda_max())
        .then(|| super::cheb_upper_closed_form(self.len(), self.lambda_max() / self.lambda_min()));
        Ok(SpectralSummary {
            rho,
            rho_upper_interval: interval,
            rho_upper_closed: closed,
            rate_per_iteration: rho.powf(1.0 / self.len() as f64),
        })
    }
}
