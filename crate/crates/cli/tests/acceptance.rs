//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use chebstep::dugd::{
    incremental_train, loss_and_grad, loss_mse, propagate, summarize_generations, Batch,
    InitDistribution, TrainConfig, TrainOutcome,
};
use chebstep::linalg::{
    generate_gaussian_problem, generate_gaussian_problem_with, jacobi_eigen, norm2,
    QuadraticProblem, Spectrum, DEFAULT_MAX_SWEEPS,
};
use chebstep::permute::{permutation_search, temporal_spectral_radius, triple_objective};
use chebstep::rng::{gaussian_vec, seeded};
use chebstep::sched::{
    cheb_upper_closed_form, chebyshev_steps, rate_chgd_upper, rate_constant, rate_lower_bound,
    StepSchedule, UNIT_GAUSSIAN_BOUND_CONSTANT,
};
use chebstep::solvers::{
    run_cheb_semi_with, run_gd, run_gd_with, run_momentum, BaselineParams, RunOptions, SolverTrace,
};
use chebstep_cli::commands::{load_ridge_data, run_ridge};
use chebstep_cli::ExperimentConfig;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn closed_form_bound() -> Outcome {
    let exact = 128.0 / 4097.0;
    let closed = cheb_upper_closed_form(6, 9.0);
    ensure((closed - exact).abs() <= 1e-12, || {
        format!("closed form {closed:.15} vs {exact:.15}")
    })?;
    let upp = chebyshev_steps(6, 1.0, 9.0)
        .and_then(|s| s.rho_upper())
        .map_err(err)?;
    ensure((upp - exact).abs() <= 1e-6, || {
        format!("interval maximum {upp:.15} vs {exact:.15}")
    })?;
    Ok(format!("closed {closed:.12}, interval {upp:.12}"))
}

fn radii_triplet() -> Outcome {
    let edges = Spectrum::from_bounds(1.0, 9.0).map_err(err)?;
    let constant = StepSchedule::constant_optimal(6, 1.0, 9.0)
        .map_err(err)?
        .spectral_radius(&edges);
    ensure((constant - 0.8f64.powi(6)).abs() <= 1e-15, || {
        format!("constant-step radius {constant}")
    })?;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for seed in 0..10 {
        let spec = generate_gaussian_problem(300, 1200, seed)
            .and_then(|p| p.spectrum())
            .map_err(err)?;
        let rho = chebyshev_steps(6, spec.lambda_min(), spec.lambda_max())
            .map_err(err)?
            .spectral_radius(&spec);
        ensure((0.02..=0.0313).contains(&rho), || {
            format!("seed {seed}: Chebyshev radius {rho}")
        })?;
        lo = lo.min(rho);
        hi = hi.max(rho);
    }
    Ok(format!(
        "constant {constant:.6}, Chebyshev in [{lo:.4}, {hi:.4}] over 10 seeds"
    ))
}

fn bound_beats_constant() -> Outcome {
    let mut rng = seeded(3_6);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let kappa = 10f64.powf(rng.random_range(0.01..4.0));
        let len = rng.random_range(2..=64usize);
        let upp = chebyshev_steps(len, 1.0, kappa)
            .and_then(|s| s.rho_upper())
            .map_err(err)?;
        let constant = rate_constant(kappa).powi(len as i32);
        ensure(upp < constant, || {
            format!("kappa {kappa}, T {len}: {upp} >= {constant}")
        })?;
        worst = worst.max(upp / constant);
    }
    Ok(format!("500 pairs, max ratio {worst:.4}"))
}

fn periodic_contraction() -> Outcome {
    let mut rng = seeded(3_5);
    let mut checks = 0;
    for _ in 0..100 {
        let n = rng.random_range(2..=64usize);
        let m = rng.random_range(n + 1..=4 * n);
        let len = rng.random_range(1..=16usize);
        let p = generate_gaussian_problem_with(n, m, &mut rng).map_err(err)?;
        let spec = p.spectrum().map_err(err)?;
        let s = chebyshev_steps(len, spec.lambda_min(), spec.lambda_max()).map_err(err)?;
        let upp = s.rho_upper().map_err(err)?;
        let x0 = gaussian_vec(&mut rng, n, 1.0, 1.0);
        let opts = RunOptions {
            stride: len,
            keep_iterates: true,
        };
        let tr = run_gd_with(&p, &s, &x0, 11 * len, true, opts).map_err(err)?;
        let its = tr.iterates().ok_or("iterates missing")?;
        for k in 0..10 {
            let (a, b) = (norm2(&its[k]), norm2(&its[k + 1]));
            ensure(b <= upp * a + 1e-12, || {
                format!("n {n}, T {len}, k {k}: {b} > {upp} * {a}")
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} period checks, no violations"))
}

fn mean_trace(
    p: &QuadraticProblem,
    s: &StepSchedule,
    iters: usize,
    samples: usize,
    seed: u64,
) -> Result<SolverTrace, String> {
    let mut rng = seeded(seed);
    let traces = (0..samples)
        .map(|_| {
            run_gd(
                p,
                s,
                &gaussian_vec(&mut rng, p.dim(), 1.0, 1.0),
                iters,
                true,
            )
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    SolverTrace::mean(&traces).map_err(err)
}

fn rate_slope() -> Outcome {
    let p = generate_gaussian_problem(100, 400, 0).map_err(err)?;
    let spec = p.spectrum().map_err(err)?;
    let s = chebyshev_steps(15, spec.lambda_min(), spec.lambda_max()).map_err(err)?;
    let tr = mean_trace(&p, &s, 150, 10, 1)?;
    let slope = tr.log_slope(15, 150, 15).ok_or("no slope")?;
    let target = 2.0 * rate_chgd_upper(15, spec.kappa()).ln();
    let rel = (slope / target - 1.0).abs();
    ensure(rel <= 0.1, || {
        format!("slope {slope:.5} vs {target:.5} ({:.1}%)", 100.0 * rel)
    })?;
    Ok(format!(
        "slope {slope:.5} vs {target:.5} ({:.1}%)",
        100.0 * rel
    ))
}

fn gradient_check() -> Outcome {
    let mut rng = seeded(6);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=16usize);
        let len = rng.random_range(1..=8usize);
        let p = generate_gaussian_problem_with(n, 2 * n, &mut rng).map_err(err)?;
        let gammas: Vec<f64> = (0..len).map(|_| rng.random_range(0.05..0.55)).collect();
        let x0 = Batch::sample(&mut rng, n, 4, InitDistribution::GaussianUnitMeanUnitVar);
        let (_, g) = loss_and_grad(&p, &gammas, &x0).map_err(err)?;
        let scale = g.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-12);
        let h = 1e-6;
        for t in 0..len {
            let (mut up, mut down) = (gammas.clone(), gammas.clone());
            up[t] += h;
            down[t] -= h;
            let f = |v: &[f64]| propagate(&p, v, &x0).map(|b| loss_mse(&b)).map_err(err);
            let fd = (f(&up)? - f(&down)?) / (2.0 * h);
            worst = worst.max((fd - g[t]).abs() / scale);
        }
    }
    ensure(worst < 1e-6, || format!("max relative error {worst:.3e}"))?;
    Ok(format!("max relative error {worst:.3e}"))
}

fn radius_loss_bound(runs: &[(Spectrum, TrainOutcome)]) -> Outcome {
    let (spec, out) = &runs[0];
    let mut tightest = f64::INFINITY;
    for g in summarize_generations(out, spec) {
        let rhs = UNIT_GAUSSIAN_BOUND_CONSTANT * (spec.len() as f64 * g.loss).sqrt();
        ensure(g.spectral_radius <= rhs, || {
            format!("generation {}: {} > {rhs}", g.generation, g.spectral_radius)
        })?;
        tightest = tightest.min(rhs / g.spectral_radius);
    }
    Ok(format!(
        "8 generations, smallest margin factor {tightest:.3}"
    ))
}

fn learned_vs_chebyshev(runs: &[(Spectrum, TrainOutcome)]) -> Outcome {
    let mut worst = 0.0f64;
    for (seed, (spec, out)) in runs.iter().enumerate() {
        let mut learned = out.state.gammas.clone();
        learned.sort_by(f64::total_cmp);
        let mut cheb = chebyshev_steps(8, spec.lambda_min(), spec.lambda_max())
            .map_err(err)?
            .steps()
            .to_vec();
        cheb.sort_by(f64::total_cmp);
        for i in 1..7 {
            let rel = (learned[i] / cheb[i] - 1.0).abs();
            ensure(rel <= 0.15, || {
                format!(
                    "seed {seed}, index {i}: {} vs {} ({:.1}%)",
                    learned[i],
                    cheb[i],
                    100.0 * rel
                )
            })?;
            worst = worst.max(rel);
        }
    }
    Ok(format!(
        "3 seeds, worst interior deviation {:.1}%",
        100.0 * worst
    ))
}

fn reference_triples() -> Outcome {
    let mut found = Vec::new();
    for (kappa, len, triple) in [(16.0, 16, (1, 9, 7)), (4.0, 8, (1, 5, 3))] {
        let search = permutation_search(1.0, kappa, len).map_err(err)?;
        let reference = triple_objective(1.0, kappa, len, triple).map_err(err)?;
        ensure(search.objective <= reference * (1.0 + 1e-12), || {
            format!("kappa {kappa}, T {len}: {} > {reference}", search.objective)
        })?;
        let q = &search.permutation;
        found.push(format!(
            "({},{},{}) at {:.5}",
            q.a, q.b, q.c, search.objective
        ));
    }
    Ok(found.join(", "))
}

fn ordering_instability() -> Outcome {
    let p = generate_gaussian_problem(500, 800, 0).map_err(err)?;
    let spec = p.spectrum().map_err(err)?;
    let (lo, hi) = (spec.lambda_min(), spec.lambda_max());
    let len = 16;
    let natural = chebyshev_steps(len, lo, hi).map_err(err)?;
    let searched = permutation_search(lo, hi, len).map_err(err)?.schedule;
    // Ascending Chebyshev points, i.e. the largest step first.
    let ascending = natural.descending();
    let r_asc = temporal_spectral_radius(ascending.steps(), lo, hi).map_err(err)?;
    let r_opt = temporal_spectral_radius(searched.steps(), lo, hi).map_err(err)?;
    ensure(r_asc >= 10.0 * r_opt, || {
        format!("temporal radii {r_asc:.3e} vs {r_opt:.3e}")
    })?;

    let periods = 5;
    let x0 = gaussian_vec(&mut seeded(11), 500, 1.0, 1.0);
    let run = |s: &StepSchedule| run_gd(&p, s, &x0, periods * len, true).map_err(err);
    let asc = run(&ascending)?;
    let opt = run(&searched)?;
    let nat = run(&natural)?;
    let start = asc.mse_at(0).ok_or("empty trace")?;
    let peak = asc.records[1..len]
        .iter()
        .map(|r| r.mse)
        .fold(0.0, f64::max);
    ensure(peak > start, || {
        format!("ascending peak {peak:.3e} <= start {start:.3e}")
    })?;
    let mut drift = 0.0f64;
    for k in 1..=periods {
        let reference = opt.mse_at(k * len).ok_or("missing period end")?;
        for tr in [&asc, &nat] {
            let v = tr.mse_at(k * len).ok_or("missing period end")?;
            drift = drift.max((v / reference - 1.0).abs());
        }
    }
    ensure(drift <= 1e-6, || {
        format!("period-end relative disagreement {drift:.3e}")
    })?;
    Ok(format!(
        "kappa {:.1}, temporal radii {r_asc:.3e} vs {r_opt:.3e}, peak/start {:.3e}, period-end drift {drift:.1e}",
        spec.kappa(),
        peak / start
    ))
}

fn baselines() -> Outcome {
    let p = generate_gaussian_problem(100, 150, 0).map_err(err)?;
    let spec = p.spectrum().map_err(err)?;
    let (lo, hi, kappa) = (spec.lambda_min(), spec.lambda_max(), spec.kappa());
    let x0 = gaussian_vec(&mut seeded(1), 100, 1.0, 1.0);
    let params = BaselineParams::from_bounds(lo, hi).map_err(err)?;
    let low = 2.0 * rate_lower_bound(kappa).ln();
    let mom = run_momentum(&p, &params, &x0, 400).map_err(err)?;
    let semi = run_cheb_semi_with(&p, &params, &x0, 400, RunOptions::default()).map_err(err)?;
    let mut parts = vec![format!("kappa {kappa:.1}")];
    for tr in [&mom, &semi] {
        let slope = tr.log_slope(100, 400, 1).ok_or("no slope")?;
        let rel = (slope / low - 1.0).abs();
        ensure(rel <= 0.1, || {
            format!("{} slope {slope:.5} vs {low:.5}", tr.algorithm)
        })?;
        parts.push(format!("{} {:.1}%", tr.algorithm, 100.0 * rel));
    }

    let len = 16;
    let s = chebyshev_steps(len, lo, hi).map_err(err)?;
    let chgd = run_gd(&p, &s, &x0, 16 * len, true).map_err(err)?;
    let per_period_cap = rate_constant(kappa).powi(len as i32);
    let predicted = low * len as f64;
    for k in 0..16 {
        let (a, b) = (
            chgd.mse_at(k * len).ok_or("gap")?,
            chgd.mse_at((k + 1) * len).ok_or("gap")?,
        );
        let norm_ratio = (b / a).sqrt();
        ensure(norm_ratio <= per_period_cap, || {
            format!("period {k}: factor {norm_ratio:.4e} > {per_period_cap:.4e}")
        })?;
        let measured = (b / a).ln();
        ensure(
            measured <= 0.5 * predicted && measured >= 2.0 * predicted,
            || format!("period {k}: log decrease {measured:.3} vs predicted {predicted:.3}"),
        )?;
    }
    parts.push("CHGD periods within bounds".into());
    Ok(parts.join(", "))
}

fn ridge_pipeline() -> Outcome {
    let mut cfg = ExperimentConfig {
        n: 98,
        m: 1994,
        seed: 0,
        t: 32,
        iters: 6000,
        permute: true,
        ..ExperimentConfig::default()
    };
    let data = load_ridge_data(&cfg).map_err(err)?;
    let gram = QuadraticProblem::from_factor(data.h.clone(), 0.0).map_err(err)?;
    let base = gram.spectrum().map_err(err)?;
    ensure(base.kappa() >= 1e4, || {
        format!("design kappa {:.3e}", base.kappa())
    })?;
    cfg.eta = (base.lambda_max() - 1e3 * base.lambda_min()) / 999.0;
    let report = run_ridge(&data, &cfg).map_err(err)?;

    let mut a = gram.matrix().clone();
    a.add_diagonal(cfg.eta);
    let exact = jacobi_eigen(&a, false, DEFAULT_MAX_SWEEPS)
        .map_err(err)?
        .values;
    let (jl, jh) = (exact[0], exact[exact.len() - 1]);
    let el = (report.lambda_min_est / jl - 1.0).abs();
    let eh = (report.lambda_max_est / jh - 1.0).abs();
    ensure(el <= 1e-3 && eh <= 1e-3, || {
        format!("power estimates off by {el:.2e} / {eh:.2e}")
    })?;

    let [gd, chgd, mom] = &report.traces[..] else {
        return Err(format!(
            "expected three traces, got {}",
            report.traces.len()
        ));
    };
    let hit = |tr: &SolverTrace| tr.first_below(1e-8).unwrap_or(usize::MAX);
    let (t_gd, t_ch) = (hit(gd), hit(chgd));
    ensure(t_ch < t_gd, || {
        format!("CHGD reaches 1e-8 at {t_ch}, GD at {t_gd}")
    })?;
    let (lg, lm) = (
        gd.last().ok_or("empty")?.mse,
        mom.last().ok_or("empty")?.mse,
    );
    ensure(lm < lg, || {
        format!("final momentum {lm:.3e} vs GD {lg:.3e}")
    })?;
    let show = |t: usize| {
        if t == usize::MAX {
            "never".to_string()
        } else {
            t.to_string()
        }
    };
    Ok(format!(
        "ridge kappa {:.0}, power errors {el:.1e}/{eh:.1e}, 1e-8 reached at CHGD {} vs GD {}",
        jh / jl,
        show(t_ch),
        show(t_gd)
    ))
}

fn train_runs() -> Result<Vec<(Spectrum, TrainOutcome)>, String> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..3u64)
            .map(|seed| {
                scope.spawn(move || -> Result<(Spectrum, TrainOutcome), String> {
                    let p = generate_gaussian_problem(100, 400, seed).map_err(err)?;
                    let spec = p.spectrum().map_err(err)?;
                    let out = incremental_train(&p, &TrainConfig::new(8, seed)).map_err(err)?;
                    Ok((spec, out))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .map_err(|_| "training thread panicked".to_string())?
            })
            .collect()
    })
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: usize, name: &str, started: Instant, outcome: Outcome| {
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {detail} [{secs:.1}s]");
            }
        }
    };

    let simple: [(usize, &str, fn() -> Outcome); 6] = [
        (1, "closed-form Chebyshev bound", closed_form_bound),
        (2, "radii on Marchenko-Pastur spectra", radii_triplet),
        (
            3,
            "Chebyshev bound beats constant step",
            bound_beats_constant,
        ),
        (
            4,
            "periodic contraction of cyclic CHGD",
            periodic_contraction,
        ),
        (5, "CHGD log-MSE slope", rate_slope),
        (6, "unrolled gradient vs finite differences", gradient_check),
    ];
    for (id, name, f) in simple {
        let t = Instant::now();
        report(id, name, t, f());
    }

    let t = Instant::now();
    match train_runs() {
        Ok(runs) => {
            report(
                7,
                "radius bounded by training loss",
                t,
                radius_loss_bound(&runs),
            );
            report(
                8,
                "learned steps match Chebyshev steps",
                t,
                learned_vs_chebyshev(&runs),
            );
        }
        Err(e) => {
            report(7, "radius bounded by training loss", t, Err(e.clone()));
            report(8, "learned steps match Chebyshev steps", t, Err(e));
        }
    }

    let rest: [(usize, &str, fn() -> Outcome); 4] = [
        (9, "affine permutation search vs reference triples", reference_triples),
        (10, "ordering instability", ordering_instability),
        (11, "momentum and semi-iterative baselines", baselines),
        (12, "ridge regression pipeline", ridge_pipeline),
    ];
    for (id, name, f) in rest {
        let t = Instant::now();
        report(id, name, t, f());
    }

    if failed == 0 {
        println!("all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 12 criteria failed");
        ExitCode::FAILURE
    }
}
