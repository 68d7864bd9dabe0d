use std::io::Write;

use chebstep::dugd::{incremental_train, summarize_generations, write_generation_csv, TrainConfig};
use chebstep::sched::{chebyshev_steps, Origin, StepSchedule};

use super::{create, load_problem};
use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};

/// Trains up to `T` generations and writes into the directory `out`
/// (default `train_out`): `losses.csv`, one `schedule_T<g>.txt` per
/// generation and `comparison.csv` of sorted learned against Chebyshev steps.
pub fn cmd_train(cfg: &ExperimentConfig) -> CliResult<()> {
    let problem = load_problem(cfg)?;
    let spectrum = problem.spectrum()?;
    let (lo, hi) = (spectrum.lambda_min(), spectrum.lambda_max());
    let train = TrainConfig {
        t_max: cfg.t,
        minibatches_per_generation: cfg.minibatches,
        batch_size: cfg.batch_size,
        learning_rate: cfg.lr,
        init_gamma: cfg.init_gamma,
        seed: cfg.seed,
        init_distribution: cfg.init,
        ..TrainConfig::new(cfg.t, cfg.seed)
    };
    let outcome = incremental_train(&problem, &train)?;
    let dir = cfg.out.clone().unwrap_or_else(|| "train_out".into());
    let header = cfg.provenance("train");

    let path = dir.join("losses.csv");
    let mut w = create(&path)?;
    writeln!(w, "{header}").map_err(CliError::io(&path))?;
    write_generation_csv(&summarize_generations(&outcome, &spectrum), &mut w)?;
    w.flush().map_err(CliError::io(&path))?;

    for steps in &outcome.schedules {
        let path = dir.join(format!("schedule_T{:02}.txt", steps.len()));
        let mut w = create(&path)?;
        writeln!(w, "{header}").map_err(CliError::io(&path))?;
        StepSchedule::new(steps.clone(), lo, hi, Origin::Learned)?.write_to(&mut w)?;
        w.flush().map_err(CliError::io(&path))?;
    }

    let mut learned = outcome.state.gammas.clone();
    learned.sort_by(f64::total_cmp);
    let cheb = chebyshev_steps(learned.len(), lo, hi)?;
    let path = dir.join("comparison.csv");
    let mut w = create(&path)?;
    let io = CliError::io(&path);
    let write = |w: &mut dyn Write| -> std::io::Result<()> {
        writeln!(w, "{header}")?;
        writeln!(w, "index,learned,chebyshev,relative_difference")?;
        for (i, (l, c)) in learned.iter().zip(cheb.steps()).enumerate() {
            writeln!(w, "{i},{l:.16e},{c:.16e},{:.16e}", l / c - 1.0)?;
        }
        w.flush()
    };
    write(&mut w).map_err(io)?;
    eprintln!(
        "trained {} generations; final loss {:.6e}",
        outcome.schedules.len(),
        outcome.state.loss_history.last().map_or(f64::NAN, |l| l.1)
    );
    Ok(())
}
