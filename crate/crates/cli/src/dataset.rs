//! Tabular data for ridge regression.

use std::path::{Path, PathBuf};

use chebstep::linalg::Matrix;
use chebstep::rng::{gaussian_vec, seeded, standard_normal};

use crate::config::ResponseColumn;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct LoadOptions {
    pub response: ResponseColumn,
    pub missing: String,
    pub header: bool,
    /// Drop rows containing the missing marker instead of whole columns.
    pub row_drop: bool,
    /// Center each feature column and scale it to unit variance.
    pub standardize: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            response: ResponseColumn::Last,
            missing: "?".into(),
            header: false,
            row_drop: false,
            standardize: false,
        }
    }
}

/// Design matrix `H` (`m×n`), response `y` and a log of the cleaning steps.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub h: Matrix,
    pub y: Vec<f64>,
    pub source: PathBuf,
    /// Original indices of the retained feature columns.
    pub columns: Vec<usize>,
    pub log: Vec<String>,
}

impl Dataset {
    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn m(&self) -> usize {
        self.h.rows()
    }
}

enum Cell {
    Number(f64),
    Missing,
    Text,
}

pub fn load_dataset(path: &Path, options: &LoadOptions) -> CliResult<Dataset> {
    let file = std::fs::File::open(path).map_err(CliError::io(path))?;
    read_dataset(file, path, options)
}

pub fn read_dataset<R: std::io::Read>(
    reader: R,
    source: &Path,
    options: &LoadOptions,
) -> CliResult<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(options.header)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows: Vec<Vec<Cell>> = Vec::new();
    let mut lines: Vec<u64> = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::Parse {
                line,
                column: 0,
                message: e.to_string(),
            }
        })?;
        lines.push(record.position().map_or(0, |p| p.line()));
        rows.push(
            record
                .iter()
                .map(|f| {
                    if f == options.missing {
                        Cell::Missing
                    } else {
                        match f.parse::<f64>() {
                            Ok(v) if v.is_finite() => Cell::Number(v),
                            _ => Cell::Text,
                        }
                    }
                })
                .collect(),
        );
    }
    let display = source.display().to_string();
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || width == 0 {
        return Err(CliError::EmptyAfterCleaning(display));
    }
    let response = match options.response {
        ResponseColumn::Last => width - 1,
        ResponseColumn::Index(i) if i < width => i,
        ResponseColumn::Index(i) => {
            return Err(CliError::Config(format!(
                "response column {i} out of range for {width} columns"
            )))
        }
    };
    let mut log = vec![format!(
        "read {} rows x {width} columns from {display}",
        rows.len()
    )];

    let mut keep_row = vec![true; rows.len()];
    if options.row_drop {
        for (r, row) in rows.iter().enumerate() {
            keep_row[r] = !row.iter().any(|c| matches!(c, Cell::Missing));
        }
        let dropped = keep_row.iter().filter(|k| !**k).count();
        log.push(format!(
            "dropped {dropped} rows containing {:?}",
            options.missing
        ));
    }
    for (r, row) in rows.iter().enumerate().filter(|(r, _)| keep_row[*r]) {
        if !matches!(row[response], Cell::Number(_)) {
            return Err(CliError::Parse {
                line: lines[r],
                column: response,
                message: "response value is not numeric".into(),
            });
        }
    }

    let mut columns = Vec::new();
    for col in (0..width).filter(|&c| c != response) {
        let mut missing = false;
        let mut text = false;
        for row in rows
            .iter()
            .zip(&keep_row)
            .filter(|(_, k)| **k)
            .map(|(row, _)| row)
        {
            match row[col] {
                Cell::Missing => missing = true,
                Cell::Text => text = true,
                Cell::Number(_) => {}
            }
        }
        if missing {
            log.push(format!(
                "dropped column {col}: contains {:?}",
                options.missing
            ));
        } else if text {
            log.push(format!("dropped column {col}: not numeric"));
        } else {
            columns.push(col);
        }
    }
    let kept: Vec<usize> = (0..rows.len()).filter(|&r| keep_row[r]).collect();
    if columns.is_empty() || kept.is_empty() {
        return Err(CliError::EmptyAfterCleaning(display));
    }
    let number = |r: usize, c: usize| match rows[r][c] {
        Cell::Number(v) => v,
        _ => unreachable!("cleaned cells are numeric"),
    };
    let mut data = Vec::with_capacity(kept.len() * columns.len());
    for &r in &kept {
        data.extend(columns.iter().map(|&c| number(r, c)));
    }
    let y: Vec<f64> = kept.iter().map(|&r| number(r, response)).collect();
    let mut h = Matrix::from_row_major(kept.len(), columns.len(), data)?;
    if options.standardize {
        h = standardize(&h);
        log.push("standardized feature columns".into());
    }
    log.push(format!(
        "result: n = {} features, m = {} samples",
        h.cols(),
        h.rows()
    ));
    Ok(Dataset {
        h,
        y,
        source: source.to_path_buf(),
        columns,
        log,
    })
}

/// Zero mean and unit population variance per column; constant columns
/// become zero.
fn standardize(h: &Matrix) -> Matrix {
    let (m, n) = (h.rows(), h.cols());
    let mut out = h.as_slice().to_vec();
    for j in 0..n {
        let mean = (0..m).map(|i| h[(i, j)]).sum::<f64>() / m as f64;
        let var = (0..m).map(|i| (h[(i, j)] - mean).powi(2)).sum::<f64>() / m as f64;
        let scale = if var > 0.0 { 1.0 / var.sqrt() } else { 0.0 };
        for i in 0..m {
            out[i * n + j] = (h[(i, j)] - mean) * scale;
        }
    }
    Matrix::from_row_major(m, n, out).expect("same shape")
}

/// Ill-conditioned synthetic regression data: Gaussian `m×n` design with
/// entries `N(0, 1/n)` whose columns are scaled geometrically from `1` down
/// to `10^(−decades/2)`, so `κ(HᵀH)` is roughly `10^decades` times the
/// Marchenko–Pastur ratio. `y = Hβ + 0.1·ε` with standard Gaussian `β`, `ε`.
pub fn synthetic_ridge_dataset(n: usize, m: usize, decades: f64, seed: u64) -> CliResult<Dataset> {
    if n < 2 || m == 0 {
        return Err(CliError::Config(format!(
            "synthetic data needs n >= 2 and m >= 1, got n={n}, m={m}"
        )));
    }
    let mut rng = seeded(seed);
    let std = (1.0 / n as f64).sqrt();
    let scales: Vec<f64> = (0..n)
        .map(|j| 10f64.powf(-0.5 * decades * j as f64 / (n - 1) as f64))
        .collect();
    let mut data = Vec::with_capacity(m * n);
    for _ in 0..m {
        for &s in &scales {
            data.push(s * std * standard_normal(&mut rng));
        }
    }
    let h = Matrix::from_row_major(m, n, data)?;
    let beta = gaussian_vec(&mut rng, n, 0.0, 1.0);
    let y = (0..m)
        .map(|i| {
            let fit: f64 = h.row(i).iter().zip(&beta).map(|(a, b)| a * b).sum();
            fit + 0.1 * standard_normal(&mut rng)
        })
        .collect();
    Ok(Dataset {
        h,
        y,
        source: PathBuf::from(format!(
            "synthetic(n={n}, m={m}, decades={decades}, seed={seed})"
        )),
        columns: (0..n).collect(),
        log: vec![format!("generated synthetic design n = {n}, m = {m}")],
    })
}
