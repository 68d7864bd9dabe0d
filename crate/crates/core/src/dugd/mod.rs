//! Deep-unfolded gradient descent: the step sizes of a `T`-step GD are
//! trained with Adam to minimize the MSE of the final iterate.
//!
//! Training data are random initial errors `x^(0) − x_opt`; the target is the
//! origin, so only `A` matters. Gradients are exact (adjoint recursion through
//! the unrolled linear map), and depth grows one step per generation.

mod adam;
mod batch;
mod train;
mod unfold;

pub use adam::{adam_step, AdamParams};
pub use batch::{Batch, InitDistribution};
pub use train::{
    expected_loss, held_out_mse, incremental_train, summarize_generations, train_generation,
    write_generation_csv, GenerationSummary, TrainConfig, TrainOutcome, TrainState,
};
pub use unfold::{forward_unrolled, grad_gammas, loss_and_grad, loss_mse, propagate, Unrolled};
