use std::io::Write;

use chebstep::linalg::{
    cholesky_solve, power_method_max, power_method_min, QuadraticProblem, DEFAULT_TOL,
};
use chebstep::permute::PermutationSearch;
use chebstep::sched::StepSchedule;
use chebstep::solvers::{
    mse_against, run_gd_with, run_momentum_with, write_traces_csv, BaselineParams, RunOptions,
    SolverTrace,
};

use super::{chgd_schedule, create, emit, sibling, POWER_MAX_ITER};
use crate::config::ExperimentConfig;
use crate::dataset::{load_dataset, synthetic_ridge_dataset, Dataset, LoadOptions};
use crate::error::{CliError, CliResult};
use crate::plot::{emit_plot_data, PlotSeries};

#[derive(Debug, Clone)]
pub struct RidgeReport {
    pub lambda_min_est: f64,
    pub lambda_max_est: f64,
    /// Direct-solve ridge estimator used as the error reference.
    pub reference: Vec<f64>,
    pub permutation: Option<PermutationSearch>,
    /// GDConstant, CHGD and Momentum traces measured against the reference.
    pub traces: Vec<SolverTrace>,
}

impl RidgeReport {
    pub fn kappa_est(&self) -> f64 {
        self.lambda_max_est / self.lambda_min_est
    }
}

/// The CSV named by `data`, or synthetic ill-conditioned data (`n`, `m`,
/// `seed`, four decades of column scaling) when no file is configured.
pub fn load_ridge_data(cfg: &ExperimentConfig) -> CliResult<Dataset> {
    match &cfg.data {
        Some(path) => load_dataset(
            path,
            &LoadOptions {
                response: cfg.response,
                missing: cfg.missing.clone(),
                header: cfg.header,
                row_drop: cfg.row_drop,
                standardize: cfg.standardize,
            },
        ),
        None => synthetic_ridge_dataset(cfg.n, cfg.m, 4.0, cfg.seed),
    }
}

/// Solves `(HᵀH + ηI) β = Hᵀy` iteratively from `β = 0` with constant-step
/// GD, CHGD and heavy-ball momentum, all designed from power-method estimates
/// of the extreme eigenvalues.
pub fn run_ridge(data: &Dataset, cfg: &ExperimentConfig) -> CliResult<RidgeReport> {
    if !(cfg.eta > 0.0) {
        return Err(CliError::Config(format!(
            "ridge needs eta > 0, got {}",
            cfg.eta
        )));
    }
    let problem = QuadraticProblem::ridge(data.h.clone(), &data.y, cfg.eta)?;
    let hi = power_method_max(&problem, DEFAULT_TOL, POWER_MAX_ITER, cfg.seed)?;
    let lo = power_method_min(&problem, hi, DEFAULT_TOL, POWER_MAX_ITER, cfg.seed)?;
    let reference = cholesky_solve(problem.matrix(), problem.target())?;
    let x0 = vec![0.0; problem.dim()];
    let opts = RunOptions {
        stride: cfg.stride,
        keep_iterates: true,
    };
    let constant = StepSchedule::constant_optimal(1, lo, hi)?;
    let (chgd, permutation) = chgd_schedule(cfg, lo, hi)?;
    let runs = [
        run_gd_with(&problem, &constant, &x0, cfg.iters, true, opts)?,
        run_gd_with(&problem, &chgd, &x0, cfg.iters, true, opts)?,
        run_momentum_with(
            &problem,
            &BaselineParams::from_bounds(lo, hi)?,
            &x0,
            cfg.iters,
            opts,
        )?,
    ];
    let traces = runs
        .iter()
        .map(|tr| mse_against(tr, &reference))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RidgeReport {
        lambda_min_est: lo,
        lambda_max_est: hi,
        reference,
        permutation,
        traces,
    })
}

/// Trace CSV at `out` (stdout if unset); with a path, also
/// `<stem>_summary.txt` and gnuplot data `<stem>.dat`.
pub fn cmd_ridge(cfg: &ExperimentConfig) -> CliResult<()> {
    let data = load_ridge_data(cfg)?;
    for line in &data.log {
        eprintln!("{line}");
    }
    let report = run_ridge(&data, cfg)?;
    let header = cfg.provenance("ridge");
    let mut buf = Vec::new();
    writeln!(buf, "{header}").expect("in-memory write");
    write_traces_csv(&report.traces, &mut buf)?;
    emit(cfg.out.as_deref(), &buf)?;
    let Some(out) = cfg.out.as_deref() else {
        return Ok(());
    };

    let path = sibling(out, "_summary.txt");
    let mut w = create(&path)?;
    let io = CliError::io(&path);
    let write = |w: &mut dyn Write| -> std::io::Result<()> {
        writeln!(w, "{header}")?;
        writeln!(w, "source = {}", data.source.display())?;
        writeln!(w, "n = {}", data.n())?;
        writeln!(w, "m = {}", data.m())?;
        writeln!(w, "eta = {:e}", cfg.eta)?;
        writeln!(w, "lambda_min_est = {:.16e}", report.lambda_min_est)?;
        writeln!(w, "lambda_max_est = {:.16e}", report.lambda_max_est)?;
        writeln!(w, "kappa_est = {:.16e}", report.kappa_est())?;
        if let Some(p) = &report.permutation {
            let q = &p.permutation;
            writeln!(w, "permutation = {} {} {}", q.a, q.b, q.c)?;
            writeln!(w, "temporal_spectral_radius = {:.16e}", p.objective)?;
        }
        for tr in &report.traces {
            let hit = tr
                .first_below(1e-8)
                .map_or("none".to_string(), |t| t.to_string());
            writeln!(w, "iterations_to_1e-8.{} = {hit}", tr.algorithm)?;
        }
        w.flush()
    };
    write(&mut w).map_err(io)?;

    let series: Vec<PlotSeries> = report
        .traces
        .iter()
        .map(|tr| PlotSeries {
            name: tr.algorithm.to_string(),
            points: tr.records.iter().map(|r| (r.t as f64, r.mse)).collect(),
        })
        .collect();
    let plot_path = sibling(out, ".dat");
    let mut w = create(&plot_path)?;
    emit_plot_data(&series, &header, &mut w)
        .and_then(|_| w.flush())
        .map_err(CliError::io(&plot_path))
}
