//! Gradient descent with step schedules, momentum baselines and MSE traces.

mod baselines;
mod gd;
mod trace;

pub use baselines::{
    cheb_semi_weights, run_cheb_semi, run_cheb_semi_with, run_momentum, run_momentum_with,
    BaselineParams, ChebSemiScaling,
};
pub use gd::{run_gd, run_gd_with};
pub use trace::{
    least_squares_slope, mse_against, write_traces_csv, Algorithm, RunOptions, SolverTrace,
    TraceRecord,
};
