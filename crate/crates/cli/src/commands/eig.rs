use std::fmt::Write as _;

use chebstep::linalg::{marchenko_pastur_edges, power_method_max, power_method_min, DEFAULT_TOL};

use super::{emit, load_problem, POWER_MAX_ITER};
use crate::config::ExperimentConfig;
use crate::error::CliResult;

/// Exact spectrum as `index,eigenvalue` CSV, preceded by comment lines with
/// the extremes, the power-method estimates and (for generated problems) the
/// Marchenko–Pastur edges.
pub fn cmd_eig(cfg: &ExperimentConfig) -> CliResult<()> {
    let problem = load_problem(cfg)?;
    let s = problem.spectrum()?;
    let hi = power_method_max(&problem, DEFAULT_TOL, POWER_MAX_ITER, cfg.seed)?;
    let lo = power_method_min(&problem, hi, DEFAULT_TOL, POWER_MAX_ITER, cfg.seed)?;
    let mut text = cfg.provenance("eig");
    text.push('\n');
    let _ = writeln!(
        text,
        "# lambda_min = {:.16e}\n# lambda_max = {:.16e}\n# kappa = {:.16e}",
        s.lambda_min(),
        s.lambda_max(),
        s.kappa()
    );
    let _ = writeln!(
        text,
        "# power_lambda_min = {lo:.16e}\n# power_lambda_max = {hi:.16e}"
    );
    if cfg.problem.is_none() {
        let (a, b) = marchenko_pastur_edges(cfg.n, cfg.m);
        let _ = writeln!(text, "# marchenko_pastur_edges = {a:.16e} {b:.16e}");
    }
    text.push_str("index,eigenvalue\n");
    for (i, l) in s.eigenvalues().iter().enumerate() {
        let _ = writeln!(text, "{i},{l:.16e}");
    }
    emit(cfg.out.as_deref(), text.as_bytes())
}
