use std::path::PathBuf;
use std::process::ExitCode;

use chebstep_cli::{run, Command, ExperimentConfig};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "chebstep",
    version,
    about = "Chebyshev step-size schedules for gradient descent"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit Chebyshev steps, optionally in searched affine order.
    Steps,
    /// Compare GD, CHGD, DUGD, momentum and Chebyshev semi-iterative traces.
    Bench,
    /// Learn step sizes by incremental deep-unfolded training.
    Train,
    /// Ridge regression on a CSV dataset or synthetic data.
    Ridge,
    /// Exact spectrum and power-method estimates.
    Eig,
}

#[derive(Args)]
struct Flags {
    /// Config file of `key = value` lines; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    m: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Schedule length (maximum generation for `train`).
    #[arg(long = "T", global = true)]
    t: Option<usize>,
    #[arg(long, global = true)]
    iters: Option<usize>,
    #[arg(long, global = true)]
    eta: Option<f64>,
    #[arg(long, global = true)]
    lambda_min: Option<f64>,
    #[arg(long, global = true)]
    lambda_max: Option<f64>,
    /// Comma-separated subset of gd, chgd, dugd, mom, semi.
    #[arg(long, global = true)]
    algos: Option<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Reorder the Chebyshev steps by the affine permutation search.
    #[arg(long, global = true)]
    permute: bool,
    /// Any other config key, as `key=value` (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl Flags {
    fn pairs(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = Vec::new();
        let mut put = |k: &str, val: Option<String>| {
            if let Some(val) = val {
                v.push((k.to_string(), val));
            }
        };
        put("n", self.n.map(|x| x.to_string()));
        put("m", self.m.map(|x| x.to_string()));
        put("seed", self.seed.map(|x| x.to_string()));
        put("T", self.t.map(|x| x.to_string()));
        put("iters", self.iters.map(|x| x.to_string()));
        put("eta", self.eta.map(|x| x.to_string()));
        put("lambda_min", self.lambda_min.map(|x| x.to_string()));
        put("lambda_max", self.lambda_max.map(|x| x.to_string()));
        put("algos", self.algos.clone());
        put("out", self.out.as_ref().map(|p| p.display().to_string()));
        put("permute", self.permute.then(|| "true".to_string()));
        v
    }
}

fn resolve(cli: &Cli) -> Result<ExperimentConfig, chebstep_cli::CliError> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &cli.flags.config {
        cfg.apply_file(path)?;
    }
    for raw in &cli.flags.set {
        let (k, v) = raw.split_once('=').ok_or_else(|| {
            chebstep_cli::CliError::Config(format!("--set expects KEY=VALUE, got {raw:?}"))
        })?;
        cfg.set(k, v)?;
    }
    for (k, v) in cli.flags.pairs() {
        cfg.set(&k, &v)?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Steps => Command::Steps,
        Cmd::Bench => Command::Bench,
        Cmd::Train => Command::Train,
        Cmd::Ridge => Command::Ridge,
        Cmd::Eig => Command::Eig,
    };
    match resolve(&cli).and_then(|cfg| run(command, &cfg)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
