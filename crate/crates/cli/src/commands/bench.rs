use std::fs::File;
use std::io::Write;

use chebstep::linalg::QuadraticProblem;
use chebstep::rng::{gaussian_vec, seeded};
use chebstep::sched::{rate_chgd_upper, rate_constant, rate_lower_bound, Origin, StepSchedule};
use chebstep::solvers::{
    run_cheb_semi_with, run_gd_with, run_momentum_with, write_traces_csv, Algorithm,
    BaselineParams, RunOptions, SolverTrace,
};

use super::{chgd_schedule, create, design_interval, emit, load_problem, sibling};
use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};
use crate::plot::{emit_plot_data, PlotSeries};

#[derive(Debug, Clone)]
pub struct BenchResult {
    /// Mean traces in the configured algorithm order.
    pub traces: Vec<SolverTrace>,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Mean MSE of the initial points.
    pub initial_mse: f64,
}

/// Runs every configured algorithm from the same `samples` initial points
/// `x0 ~ N(1, I)` (drawn from `seed + 1`) and averages the traces.
pub fn run_bench(cfg: &ExperimentConfig, problem: &QuadraticProblem) -> CliResult<BenchResult> {
    let (lo, hi) = design_interval(cfg, problem)?;
    let mut rng = seeded(cfg.seed.wrapping_add(1));
    let x0s: Vec<Vec<f64>> = (0..cfg.samples)
        .map(|_| gaussian_vec(&mut rng, problem.dim(), 1.0, 1.0))
        .collect();
    let opts = RunOptions {
        stride: cfg.stride,
        keep_iterates: false,
    };
    let learned = match &cfg.schedule {
        Some(path) => {
            let f = File::open(path).map_err(CliError::io(path))?;
            Some(StepSchedule::read_from(std::io::BufReader::new(f))?.with_origin(Origin::Learned))
        }
        None => None,
    };
    let chgd = if cfg.algos.contains(&Algorithm::Chgd) {
        Some(chgd_schedule(cfg, lo, hi)?.0)
    } else {
        None
    };
    let constant = StepSchedule::constant_optimal(1, lo, hi)?;
    let mut traces = Vec::new();
    for &alg in &cfg.algos {
        let mut runs = Vec::with_capacity(x0s.len());
        for x0 in &x0s {
            let tr = match alg {
                Algorithm::GdConstant => {
                    run_gd_with(problem, &constant, x0, cfg.iters, true, opts)?
                }
                Algorithm::Chgd => {
                    let s = chgd.as_ref().expect("built when CHGD is selected");
                    run_gd_with(problem, s, x0, cfg.iters, true, opts)?
                }
                Algorithm::Dugd => {
                    let s = learned.as_ref().ok_or_else(|| {
                        CliError::Config(
                            "DUGD needs a learned schedule file (schedule = ...)".into(),
                        )
                    })?;
                    run_gd_with(problem, s, x0, cfg.iters, true, opts)?
                }
                Algorithm::Momentum => run_momentum_with(
                    problem,
                    &BaselineParams::from_bounds(lo, hi)?,
                    x0,
                    cfg.iters,
                    opts,
                )?,
                Algorithm::ChebSemi => run_cheb_semi_with(
                    problem,
                    &BaselineParams::from_bounds(lo, hi)?,
                    x0,
                    cfg.iters,
                    opts,
                )?,
            };
            runs.push(tr);
        }
        if !runs.is_empty() {
            traces.push(SolverTrace::mean(&runs)?);
        }
    }
    let initial_mse = traces.first().and_then(|t| t.mse_at(0)).unwrap_or(0.0);
    Ok(BenchResult {
        traces,
        lambda_min: lo,
        lambda_max: hi,
        initial_mse,
    })
}

/// Theoretical `mse_0 · R^(2t)` lines for the configured algorithms:
/// `(κ−1)/(κ+1)` for constant-step GD, the CHGD bound rate for `T`, and the
/// first-order lower bound once for the momentum methods.
pub fn rate_lines(cfg: &ExperimentConfig, result: &BenchResult) -> Vec<PlotSeries> {
    let kappa = result.lambda_max / result.lambda_min;
    let mut rates: Vec<(&str, f64)> = Vec::new();
    for alg in &cfg.algos {
        let entry = match alg {
            Algorithm::GdConstant => ("rate GDConstant", rate_constant(kappa)),
            Algorithm::Chgd => ("rate CHGD", rate_chgd_upper(cfg.t, kappa)),
            Algorithm::Momentum | Algorithm::ChebSemi => {
                ("rate lower bound", rate_lower_bound(kappa))
            }
            Algorithm::Dugd => continue,
        };
        if !rates.iter().any(|r| r.0 == entry.0) {
            rates.push(entry);
        }
    }
    let Some(grid) = result.traces.first() else {
        return Vec::new();
    };
    rates
        .into_iter()
        .map(|(name, r)| PlotSeries {
            name: name.to_string(),
            points: grid
                .records
                .iter()
                .map(|rec| {
                    (
                        rec.t as f64,
                        result.initial_mse * r.powf(2.0 * rec.t as f64),
                    )
                })
                .collect(),
        })
        .collect()
}

/// Trace CSV at `out` (stdout if unset); with a path, also `<stem>_rates.csv`
/// and gnuplot data `<stem>.dat`.
pub fn cmd_bench(cfg: &ExperimentConfig) -> CliResult<()> {
    let problem = load_problem(cfg)?;
    let result = run_bench(cfg, &problem)?;
    let header = cfg.provenance("bench");
    let mut buf = Vec::new();
    writeln!(buf, "{header}").expect("in-memory write");
    write_traces_csv(&result.traces, &mut buf)?;
    emit(cfg.out.as_deref(), &buf)?;
    let Some(out) = cfg.out.as_deref() else {
        return Ok(());
    };
    let lines = rate_lines(cfg, &result);
    let rates_path = sibling(out, "_rates.csv");
    let mut w = create(&rates_path)?;
    let io = CliError::io(&rates_path);
    let write_rates = |w: &mut dyn Write| -> std::io::Result<()> {
        writeln!(w, "{header}")?;
        writeln!(w, "rate,t,mse")?;
        for s in &lines {
            for &(t, v) in &s.points {
                writeln!(w, "{},{},{:.16e}", s.name.trim_start_matches("rate "), t, v)?;
            }
        }
        w.flush()
    };
    write_rates(&mut w).map_err(io)?;
    let mut series: Vec<PlotSeries> = result
        .traces
        .iter()
        .map(|tr| PlotSeries {
            name: tr.algorithm.to_string(),
            points: tr.records.iter().map(|r| (r.t as f64, r.mse)).collect(),
        })
        .collect();
    series.extend(lines);
    let plot_path = sibling(out, ".dat");
    let mut w = create(&plot_path)?;
    emit_plot_data(&series, &header, &mut w)
        .and_then(|_| w.flush())
        .map_err(CliError::io(&plot_path))
}
