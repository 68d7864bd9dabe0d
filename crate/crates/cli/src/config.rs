//! Flat `key = value` experiment configuration.
//!
//! Values are resolved in three layers: built-in defaults, then the config
//! file, then command-line flags. The fully resolved set is echoed as the
//! first comment line of every output file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chebstep::dugd::InitDistribution;
use chebstep::solvers::Algorithm;

use crate::error::{CliError, CliResult};

/// Which column of a dataset holds the response.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseColumn {
    Last,
    Index(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub t: usize,
    pub iters: usize,
    pub stride: usize,
    pub samples: usize,
    pub eta: f64,
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub algos: Vec<Algorithm>,
    pub out: Option<PathBuf>,
    pub permute: bool,
    pub problem: Option<PathBuf>,
    pub schedule: Option<PathBuf>,
    pub data: Option<PathBuf>,
    pub response: ResponseColumn,
    pub missing: String,
    pub header: bool,
    pub row_drop: bool,
    pub standardize: bool,
    pub minibatches: usize,
    pub batch_size: usize,
    pub lr: f64,
    pub init_gamma: f64,
    pub init: InitDistribution,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n: 100,
            m: 400,
            seed: 0,
            t: 16,
            iters: 150,
            stride: 1,
            samples: 10,
            eta: 158.48,
            lambda_min: None,
            lambda_max: None,
            algos: vec![
                Algorithm::GdConstant,
                Algorithm::Chgd,
                Algorithm::Momentum,
                Algorithm::ChebSemi,
            ],
            out: None,
            permute: false,
            problem: None,
            schedule: None,
            data: None,
            response: ResponseColumn::Last,
            missing: "?".into(),
            header: false,
            row_drop: false,
            standardize: false,
            minibatches: 500,
            batch_size: 200,
            lr: 0.002,
            init_gamma: 0.3,
            init: InitDistribution::GaussianUnitMeanUnitVar,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("invalid value {value:?} for {key}")))
}

fn parse_bool(key: &str, value: &str) -> CliResult<bool> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(CliError::Config(format!(
            "invalid boolean {value:?} for {key}"
        ))),
    }
}

fn optional_path(value: &str) -> Option<PathBuf> {
    (!value.is_empty() && value != "none").then(|| PathBuf::from(value))
}

impl ExperimentConfig {
    /// Sets one key. Keys accept `-` and `_` interchangeably.
    pub fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        let value = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "n" => self.n = parse(key, value)?,
            "m" => self.m = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "T" | "t" => self.t = parse(key, value)?,
            "iters" => self.iters = parse(key, value)?,
            "stride" => self.stride = parse(key, value)?,
            "samples" => self.samples = parse(key, value)?,
            "eta" => self.eta = parse(key, value)?,
            "lambda_min" => self.lambda_min = Some(parse(key, value)?),
            "lambda_max" => self.lambda_max = Some(parse(key, value)?),
            "algos" => {
                self.algos = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<Algorithm>()
                            .map_err(|e| CliError::Config(e.to_string()))
                    })
                    .collect::<CliResult<_>>()?
            }
            "out" => self.out = optional_path(value),
            "permute" => self.permute = parse_bool(key, value)?,
            "problem" => self.problem = optional_path(value),
            "schedule" => self.schedule = optional_path(value),
            "data" => self.data = optional_path(value),
            "response" => {
                self.response = if value == "last" {
                    ResponseColumn::Last
                } else {
                    ResponseColumn::Index(parse(key, value)?)
                }
            }
            "missing" => self.missing = value.to_string(),
            "header" => self.header = parse_bool(key, value)?,
            "row_drop" => self.row_drop = parse_bool(key, value)?,
            "standardize" => self.standardize = parse_bool(key, value)?,
            "minibatches" => self.minibatches = parse(key, value)?,
            "batch_size" => self.batch_size = parse(key, value)?,
            "lr" => self.lr = parse(key, value)?,
            "init_gamma" => self.init_gamma = parse(key, value)?,
            "init" => {
                self.init = match value {
                    "gaussian" => InitDistribution::GaussianUnitMeanUnitVar,
                    "zero" => InitDistribution::ZeroStart,
                    _ => {
                        return Err(CliError::Config(format!(
                            "init must be gaussian or zero, got {value:?}"
                        )))
                    }
                }
            }
            other => return Err(CliError::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a config file: `key = value` per line, `#` starts a comment.
    pub fn apply_text(&mut self, text: &str, origin: &str) -> CliResult<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("{origin}:{}: expected `key = value`", i + 1))
            })?;
            self.set(key, value).map_err(|e| match e {
                CliError::Config(m) => CliError::Config(format!("{origin}:{}: {m}", i + 1)),
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> CliResult<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        self.apply_text(&text, &path.display().to_string())
    }

    /// Range checks and existence of every referenced input file.
    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.n == 0 || self.m == 0 {
            return bad(format!(
                "n and m must be positive (n={}, m={})",
                self.n, self.m
            ));
        }
        if self.t == 0 {
            return bad("T must be positive".into());
        }
        if self.stride == 0 {
            return bad("stride must be positive".into());
        }
        if !(self.eta.is_finite() && self.eta >= 0.0) {
            return bad(format!(
                "eta must be finite and nonnegative, got {}",
                self.eta
            ));
        }
        if let (Some(lo), Some(hi)) = (self.lambda_min, self.lambda_max) {
            if !(lo > 0.0 && lo < hi && hi.is_finite()) {
                return bad(format!(
                    "need 0 < lambda_min < lambda_max, got [{lo}, {hi}]"
                ));
            }
        }
        if self.lambda_min.is_some() != self.lambda_max.is_some() {
            return bad("lambda_min and lambda_max must be given together".into());
        }
        if self.batch_size == 0 {
            return bad("batch_size must be positive".into());
        }
        if !(self.lr > 0.0 && self.lr.is_finite()) {
            return bad(format!("lr must be positive, got {}", self.lr));
        }
        for path in [&self.problem, &self.schedule, &self.data]
            .into_iter()
            .flatten()
        {
            if !path.is_file() {
                return bad(format!("input file {} does not exist", path.display()));
            }
        }
        Ok(())
    }

    pub fn interval(&self) -> Option<(f64, f64)> {
        self.lambda_min.zip(self.lambda_max)
    }

    /// `# chebstep <command> key=value ...` with every key in a fixed order.
    pub fn provenance(&self, command: &str) -> String {
        let opt_f = |v: Option<f64>| v.map_or("none".to_string(), |x| format!("{x:e}"));
        let opt_p = |v: &Option<PathBuf>| {
            v.as_ref()
                .map_or("none".to_string(), |p| p.display().to_string())
        };
        let algos: Vec<&str> = self.algos.iter().map(|a| a.as_str()).collect();
        let mut s = format!("# chebstep {command}");
        let _ = write!(
            s,
            " n={} m={} seed={} T={} iters={} stride={} samples={} eta={:e} lambda_min={} lambda_max={}",
            self.n,
            self.m,
            self.seed,
            self.t,
            self.iters,
            self.stride,
            self.samples,
            self.eta,
            opt_f(self.lambda_min),
            opt_f(self.lambda_max)
        );
        let _ = write!(
            s,
            " algos={} out={} permute={} problem={} schedule={} data={}",
            algos.join(","),
            opt_p(&self.out),
            self.permute,
            opt_p(&self.problem),
            opt_p(&self.schedule),
            opt_p(&self.data)
        );
        let response = match self.response {
            ResponseColumn::Last => "last".to_string(),
            ResponseColumn::Index(i) => i.to_string(),
        };
        let init = match self.init {
            InitDistribution::GaussianUnitMeanUnitVar => "gaussian",
            InitDistribution::ZeroStart => "zero",
        };
        let _ = write!(
            s,
            " response={response} missing={} header={} row_drop={} standardize={} minibatches={} batch_size={} lr={:e} init_gamma={:e} init={init}",
            self.missing, self.header, self.row_drop, self.standardize, self.minibatches, self.batch_size, self.lr, self.init_gamma
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut c = ExperimentConfig::default();
        c.apply_text(
            "# experiment\nn = 300\nm=1200 # trailing\n\nalgos = gd, chgd\nT = 15\n",
            "cfg",
        )
        .unwrap();
        c.set("n", "50").unwrap();
        assert_eq!((c.n, c.m, c.t), (50, 1200, 15));
        assert_eq!(c.algos, vec![Algorithm::GdConstant, Algorithm::Chgd]);
    }

    #[test]
    fn errors_carry_location() {
        let mut c = ExperimentConfig::default();
        let e = c.apply_text("n = 3\nbogus = 1\n", "cfg").unwrap_err();
        assert_eq!(
            e.to_string(),
            "configuration error: cfg:2: unknown key \"bogus\""
        );
        assert!(c.apply_text("n 3", "cfg").is_err());
        assert!(c.set("n", "-1").is_err());
        assert!(c.set("permute", "maybe").is_err());
    }

    #[test]
    fn validation() {
        let mut c = ExperimentConfig::default();
        assert!(c.validate().is_ok());
        c.lambda_min = Some(1.0);
        assert!(c.validate().is_err());
        c.lambda_max = Some(0.5);
        assert!(c.validate().is_err());
        c.lambda_max = Some(9.0);
        assert!(c.validate().is_ok());
        c.data = Some("/nonexistent/file.csv".into());
        assert_eq!(c.validate().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn provenance_is_stable() {
        let c = ExperimentConfig::default();
        let p = c.provenance("bench");
        assert!(p.starts_with("# chebstep bench n=100 m=400 seed=0 T=16 "));
        assert!(p.contains(" algos=GDConstant,CHGD,Momentum,ChebSemi "));
        assert_eq!(p, ExperimentConfig::default().provenance("bench"));
        assert!(!p.contains('\n'));
    }
}
