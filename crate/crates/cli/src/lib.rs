//! Experiment harness for Chebyshev step schedules: schedule generation,
//! solver benchmarks, step-size training, ridge regression on CSV data and
//! spectrum inspection. Every output file starts with a comment line holding
//! the resolved configuration.

pub mod commands;
pub mod config;
pub mod dataset;
pub mod error;
pub mod plot;

pub use config::{ExperimentConfig, ResponseColumn};
pub use error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Steps,
    Bench,
    Train,
    Ridge,
    Eig,
}

pub fn run(command: Command, cfg: &ExperimentConfig) -> CliResult<()> {
    cfg.validate()?;
    match command {
        Command::Steps => commands::cmd_steps(cfg),
        Command::Bench => commands::cmd_bench(cfg),
        Command::Train => commands::cmd_train(cfg),
        Command::Ridge => commands::cmd_ridge(cfg),
        Command::Eig => commands::cmd_eig(cfg),
    }
}
