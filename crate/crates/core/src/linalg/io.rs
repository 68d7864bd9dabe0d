//! Plain-text matrix files.
//!
//! Layout, byte for byte, as written by [`write_problem`]:
//!
//! ```text
//! <n> <m>\n
//! <row 0>\n
//! ...
//! ```
//!
//! With `m > 0` the body holds the `m×n` factor `H` (so `A = HᵀH`); with
//! `m = 0` it holds the `n×n` matrix `A` itself. Each row is written on its
//! own line, entries separated by one space and formatted as `{:.16e}`
//! (17 significant digits, round-trips exactly). The reader only requires
//! whitespace separation and ignores line structure.

use std::io::{BufRead, Write};

use super::dense::Matrix;
use super::problem::QuadraticProblem;
use crate::error::{Error, Result};

pub fn read_problem<R: BufRead>(reader: R) -> Result<QuadraticProblem> {
    let mut tokens = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let body = line.trim();
        if body.is_empty() {
            continue;
        }
        if header.is_none() {
            let parts: Vec<&str> = body.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("expected integer dimension, found {s:?}"),
                })
            };
            if parts.len() != 2 {
                return Err(Error::Parse {
                    line: lineno,
                    message: "header must be `n m`".into(),
                });
            }
            header = Some((parse(parts[0])?, parse(parts[1])?));
            continue;
        }
        for tok in body.split_whitespace() {
            let v = tok.parse::<f64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("expected a number, found {tok:?}"),
            })?;
            tokens.push(v);
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 1,
        message: "missing `n m` header".into(),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: 1,
            message: "n must be positive".into(),
        });
    }
    if m == 0 {
        QuadraticProblem::from_matrix(Matrix::from_row_major(n, n, tokens)?)
    } else {
        QuadraticProblem::from_factor(Matrix::from_row_major(m, n, tokens)?, 0.0)
    }
}

/// Writes the factor when one is held with `η = 0`, otherwise `A` directly.
pub fn write_problem<W: Write>(problem: &QuadraticProblem, mut out: W) -> Result<()> {
    let n = problem.dim();
    let (m, body) = match problem.factor() {
        Some(h) if problem.ridge_eta() == 0.0 => (h.rows(), h),
        _ => (0, problem.matrix()),
    };
    writeln!(out, "{n} {m}")?;
    for i in 0..body.rows() {
        let row: Vec<String> = body.row(i).iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}
