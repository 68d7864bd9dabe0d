use std::io::Write;

use rand::Rng;

use super::adam::{adam_step, AdamParams};
use super::batch::{Batch, InitDistribution};
use super::unfold::{loss_and_grad, loss_mse, propagate};
use crate::error::{Error, Result};
use crate::linalg::{EigenDecomposition, QuadraticProblem, Spectrum};
use crate::rng::{seeded, SeededRng};
use crate::sched::{spectral_radius, Origin, StepSchedule};

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub t_max: usize,
    /// Adam steps per generation; zero leaves the parameters untouched.
    pub minibatches_per_generation: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub init_gamma: f64,
    pub adam: AdamParams,
    pub seed: u64,
    pub init_distribution: InitDistribution,
}

impl TrainConfig {
    pub fn new(t_max: usize, seed: u64) -> Self {
        Self {
            t_max,
            minibatches_per_generation: 500,
            batch_size: 200,
            learning_rate: 0.002,
            init_gamma: 0.3,
            adam: AdamParams::default(),
            seed,
            init_distribution: InitDistribution::GaussianUnitMeanUnitVar,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParams(msg.into()));
        if self.t_max == 0 {
            return bad("t_max must be positive");
        }
        if self.batch_size == 0 {
            return bad("batch_size must be positive");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning_rate must be positive");
        }
        if !self.init_gamma.is_finite() {
            return bad("init_gamma must be finite");
        }
        let a = &self.adam;
        if !((0.0..1.0).contains(&a.beta1) && (0.0..1.0).contains(&a.beta2) && a.eps > 0.0) {
            return bad("Adam needs 0 <= beta1, beta2 < 1 and eps > 0");
        }
        Ok(())
    }
}

/// Trainable steps with their Adam accumulators.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainState {
    pub gammas: Vec<f64>,
    pub adam_m: Vec<f64>,
    pub adam_v: Vec<f64>,
    /// Adam updates since the last [`TrainState::grow`].
    pub adam_step: u64,
    pub generation: usize,
    /// `(generation, loss of the last minibatch)`.
    pub loss_history: Vec<(usize, f64)>,
}

impl TrainState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a step initialized to `init` and restarts the optimizer with
    /// zeroed moments.
    pub fn grow(&mut self, init: f64) {
        self.gammas.push(init);
        let len = self.gammas.len();
        self.adam_m = vec![0.0; len];
        self.adam_v = vec![0.0; len];
        self.adam_step = 0;
        self.generation += 1;
    }

    pub fn schedule(&self, lambda_min: f64, lambda_max: f64) -> Result<StepSchedule> {
        StepSchedule::new(self.gammas.clone(), lambda_min, lambda_max, Origin::Learned)
    }
}

/// Runs the configured number of Adam steps, each on a fresh minibatch, and
/// returns the minibatch losses (measured before each update).
pub fn train_generation<R: Rng + ?Sized>(
    problem: &QuadraticProblem,
    state: &mut TrainState,
    config: &TrainConfig,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if state.generation == 0 || state.gammas.is_empty() {
        return Err(Error::ScheduleEmpty);
    }
    let mut losses = Vec::with_capacity(config.minibatches_per_generation);
    for _ in 0..config.minibatches_per_generation {
        let x0 = Batch::sample(
            rng,
            problem.dim(),
            config.batch_size,
            config.init_distribution,
        );
        let (loss, grad) = loss_and_grad(problem, &state.gammas, &x0)?;
        if !loss.is_finite() {
            return Err(Error::NonConvergence {
                method: "deep-unfolded training",
                iterations: losses.len(),
            });
        }
        adam_step(state, &grad, config.learning_rate, &config.adam)?;
        losses.push(loss);
    }
    if let Some(&last) = losses.last() {
        state.loss_history.push((state.generation, last));
    }
    Ok(losses)
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub state: TrainState,
    /// Learned steps at the end of each generation; entry `g` has length `g + 1`.
    pub schedules: Vec<Vec<f64>>,
    /// Per-minibatch losses of each generation.
    pub minibatch_losses: Vec<Vec<f64>>,
}

/// Grows the unrolled depth from 1 to `t_max`, warm-starting earlier steps
/// from the previous generation. All minibatches come from one generator
/// seeded with `config.seed`.
pub fn incremental_train(problem: &QuadraticProblem, config: &TrainConfig) -> Result<TrainOutcome> {
    config.validate()?;
    let mut rng: SeededRng = seeded(config.seed);
    let mut state = TrainState::new();
    let mut schedules = Vec::with_capacity(config.t_max);
    let mut minibatch_losses = Vec::with_capacity(config.t_max);
    for _ in 0..config.t_max {
        state.grow(config.init_gamma);
        minibatch_losses.push(train_generation(problem, &mut state, config, &mut rng)?);
        schedules.push(state.gammas.clone());
    }
    Ok(TrainOutcome {
        state,
        schedules,
        minibatch_losses,
    })
}

/// Monte-Carlo MSE of the unrolled map over `samples` fresh initial points,
/// evaluated in chunks with a fixed summation order.
pub fn held_out_mse(
    problem: &QuadraticProblem,
    gammas: &[f64],
    samples: usize,
    init: InitDistribution,
    seed: u64,
) -> Result<f64> {
    const CHUNK: usize = 1000;
    let mut rng = seeded(seed);
    let mut total = 0.0;
    let mut left = samples;
    while left > 0 {
        let size = left.min(CHUNK);
        let x0 = Batch::sample(&mut rng, problem.dim(), size, init);
        total += loss_mse(&propagate(problem, gammas, &x0)?) * size as f64;
        left -= size;
    }
    Ok(total / samples.max(1) as f64)
}

/// Exact expected loss `E ‖∏(I − γ_t A) x^(0)‖²/n` for `x^(0) ~ N(μ𝟙, I)`:
/// `(1/n) Σ_i q_i² (1 + μ² ⟨u_i, 𝟙⟩²)` with `q_i = ∏(1 − γ_t λ_i)`.
pub fn expected_loss(
    decomposition: &EigenDecomposition,
    gammas: &[f64],
    init: InitDistribution,
) -> Result<f64> {
    let vectors = decomposition
        .vectors
        .as_ref()
        .ok_or_else(|| Error::InvalidParams("expected loss needs eigenvectors".into()))?;
    let n = decomposition.values.len();
    let mu2 = init.mean() * init.mean();
    let mut total = 0.0;
    for (k, &lambda) in decomposition.values.iter().enumerate() {
        let q: f64 = gammas.iter().map(|g| 1.0 - g * lambda).product();
        let s: f64 = (0..vectors.rows()).map(|i| vectors[(i, k)]).sum();
        total += q * q * (1.0 + mu2 * s * s);
    }
    Ok(total / n.max(1) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationSummary {
    pub generation: usize,
    pub len: usize,
    pub loss: f64,
    pub spectral_radius: f64,
}

pub fn summarize_generations(
    outcome: &TrainOutcome,
    spectrum: &Spectrum,
) -> Vec<GenerationSummary> {
    outcome
        .schedules
        .iter()
        .zip(&outcome.state.loss_history)
        .map(|(steps, &(generation, loss))| GenerationSummary {
            generation,
            len: steps.len(),
            loss,
            spectral_radius: spectral_radius(steps, spectrum.eigenvalues()),
        })
        .collect()
}

/// CSV with header `generation,T,loss,spectral_radius`.
pub fn write_generation_csv<W: Write>(rows: &[GenerationSummary], mut out: W) -> Result<()> {
    writeln!(out, "generation,T,loss,spectral_radius")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{:.16e},{:.16e}",
            r.generation, r.len, r.loss, r.spectral_radius
        )?;
    }
    Ok(())
}
