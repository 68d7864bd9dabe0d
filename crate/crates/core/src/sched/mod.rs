//! Step schedules and the spectral analysis behind them.

mod radius;
mod rates;
mod schedule;

pub use radius::{
    prefix_interval_maxima, rho_upper_interval, spectral_radius, step_polynomial, SpectralSummary,
    GRID_POINTS, REFINE_TOL,
};
pub use rates::{
    cheb_upper_closed_form, competitor_beats, minimax_competitor_test, mse_bound_check,
    rate_chgd_upper, rate_constant, rate_lower_bound, BoundCheck, GRID_TOLERANCE,
    UNIT_GAUSSIAN_BOUND_CONSTANT,
};
pub use schedule::{chebyshev_steps, optimal_constant_step, Origin, StepSchedule};
