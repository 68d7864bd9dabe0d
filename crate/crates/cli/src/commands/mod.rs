mod bench;
mod eig;
mod ridge;
mod steps;
mod train;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use chebstep::linalg::{generate_gaussian_problem, read_problem, QuadraticProblem};
use chebstep::permute::{permutation_search, PermutationSearch};
use chebstep::sched::{chebyshev_steps, StepSchedule};

pub use bench::{cmd_bench, rate_lines, run_bench, BenchResult};
pub use eig::cmd_eig;
pub use ridge::{cmd_ridge, load_ridge_data, run_ridge, RidgeReport};
pub use steps::{cmd_steps, render_steps};
pub use train::cmd_train;

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};

/// Iteration cap for the power-method estimates. Clustered bottom
/// eigenvalues make the shifted iteration for `λ_min` take millions of steps.
pub const POWER_MAX_ITER: usize = 20_000_000;

/// The matrix file named by `problem`, or a Gaussian `HᵀH` built from
/// `n`, `m` and `seed`.
pub fn load_problem(cfg: &ExperimentConfig) -> CliResult<QuadraticProblem> {
    match &cfg.problem {
        Some(path) => {
            let file = File::open(path).map_err(CliError::io(path))?;
            Ok(read_problem(std::io::BufReader::new(file))?)
        }
        None => Ok(generate_gaussian_problem(cfg.n, cfg.m, cfg.seed)?),
    }
}

/// `[lambda_min, lambda_max]` from the config, else the exact extreme
/// eigenvalues of `problem`.
pub fn design_interval(
    cfg: &ExperimentConfig,
    problem: &QuadraticProblem,
) -> CliResult<(f64, f64)> {
    if let Some(iv) = cfg.interval() {
        return Ok(iv);
    }
    let s = problem.spectrum()?;
    Ok((s.lambda_min(), s.lambda_max()))
}

/// Chebyshev steps of length `T`, reordered by the permutation search when
/// `permute` is set and `T` is a power of two.
pub fn chgd_schedule(
    cfg: &ExperimentConfig,
    lambda_min: f64,
    lambda_max: f64,
) -> CliResult<(StepSchedule, Option<PermutationSearch>)> {
    if cfg.permute {
        if cfg.t >= 2 && cfg.t.is_power_of_two() {
            let found = permutation_search(lambda_min, lambda_max, cfg.t)?;
            return Ok((found.schedule.clone(), Some(found)));
        }
        eprintln!(
            "warning: T = {} is not a power of two; emitting Chebyshev steps in natural order",
            cfg.t
        );
    }
    Ok((chebyshev_steps(cfg.t, lambda_min, lambda_max)?, None))
}

pub(crate) fn create(path: &Path) -> CliResult<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    }
    Ok(BufWriter::new(
        File::create(path).map_err(CliError::io(path))?,
    ))
}

/// `dir/stem.csv` → `dir/stem<suffix>`.
pub(crate) fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map_or_else(|| "out".into(), |s| s.to_string_lossy().into_owned());
    path.with_file_name(format!("{stem}{suffix}"))
}

/// Writes `text` to `out`, or to stdout when no path is configured.
pub(crate) fn emit(out: Option<&Path>, text: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => {
            let mut w = create(path)?;
            w.write_all(text).map_err(CliError::io(path))?;
            w.flush().map_err(CliError::io(path))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text).map_err(CliError::io("<stdout>"))
        }
    }
}
