use std::fs::File;
use std::io::{BufWriter, Write};

use serde::Serialize;

use interference_core::report::{to_json, write_progress_csv, write_sweep_csv};
use interference_core::search_sim::{
    build_schedule, default_k_max, first_success_k, lower_bound_check, progress_all_items,
    scaling_sweep, uniform_start, upper_bound_check, LowerBoundCheck, ModelFamily, ProgressReport,
    Strategy, SuccessMode, SweepTable, UpperBoundCheck,
};
use interference_core::sector_algebra::{coherence_sum_matches_identity, pairing_identity_check};
use interference_core::theory_models::{
    check_lemmas_with, classical_model, corrupted_coherence_projectors, lemma_report,
    quantum_model, synthetic_model, synthetic_model_with_dims, LemmaReport, Model, ModelKind,
    PYTHAGORAS_SAMPLES,
};
use interference_core::{Error, Result};

use crate::args::{CommonArgs, Format, KindArg, RunConfig, StrategyArg};

/// Largest N for which `verify` runs the exhaustive pairing check.
const PAIRING_CHECK_MAX_N: usize = 6;
const SYNTHETIC_DEFAULT_H: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Violation,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn check_h_le_n(h: usize, n: usize) -> Result<()> {
    if h > n {
        return Err(usage(format!("h exceeds N (h = {h}, N = {n})")));
    }
    Ok(())
}

/// Builds the model for `(kind, N)`, honouring `--h` and `--dims`.
fn build_model(kind: ModelKind, n: usize, args: &CommonArgs) -> Result<Model> {
    if let Some(h) = args.h {
        check_h_le_n(h, n)?;
    }
    match kind {
        ModelKind::Classical => {
            if args.h.is_some_and(|h| h != 1) {
                return Err(usage("classical models have h = 1"));
            }
            classical_model(n)
        }
        ModelKind::Quantum => {
            if args.h.is_some_and(|h| h != 2) {
                return Err(usage("quantum models have h = 2"));
            }
            quantum_model(n)
        }
        ModelKind::Synthetic => {
            let h = args.h.unwrap_or(SYNTHETIC_DEFAULT_H.min(n));
            match &args.dims {
                Some(d) => synthetic_model_with_dims(n, h, &d.0),
                None => synthetic_model(n, h),
            }
        }
    }
}

fn single_n(args: &CommonArgs, default: usize) -> Result<usize> {
    match args.n.as_slice() {
        [] => Ok(default),
        [n] => Ok(*n),
        _ => Err(usage("this command takes a single --n")),
    }
}

fn open_out(args: &CommonArgs) -> Result<Option<BufWriter<File>>> {
    args.out
        .as_ref()
        .map(|p| {
            File::create(p)
                .map(BufWriter::new)
                .map_err(|e| usage(format!("cannot create {}: {e}", p.display())))
        })
        .transpose()
}

fn write_json<T: Serialize>(args: &CommonArgs, config: &RunConfig, data: &T) -> Result<()> {
    if let Some(mut w) = open_out(args)? {
        let text = to_json(&config.to_json(), data)?;
        writeln!(w, "{text}").map_err(|e| usage(format!("write failed: {e}")))?;
        w.flush().map_err(|e| usage(format!("write failed: {e}")))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- verify

#[derive(Debug, Clone, Serialize)]
struct VerifyRow {
    check: &'static str,
    model: Option<ModelKind>,
    n: usize,
    h: Option<usize>,
    deviation: f64,
    passed: bool,
}

fn lemma_row(model: &Model, corrupt: bool, tol: f64) -> Result<VerifyRow> {
    let report: LemmaReport = if corrupt {
        check_lemmas_with(
            model.dim(),
            &corrupted_coherence_projectors(model)?,
            PYTHAGORAS_SAMPLES,
            0,
        )?
    } else {
        lemma_report(model, 0)?
    };
    let deviation = report
        .decomposition_deviation
        .max(report.orthogonality_deviation)
        .max(report.pythagoras_deviation);
    Ok(VerifyRow {
        check: "lemmas",
        model: Some(model.kind()),
        n: model.n(),
        h: Some(model.h()),
        deviation,
        passed: report.lemma1_holds(tol) && report.lemma2_holds(tol),
    })
}

pub fn verify(args: &CommonArgs, config: &mut RunConfig) -> Result<Outcome> {
    let explicit = !args.n.is_empty();
    let ns: Vec<usize> = if explicit {
        args.n.clone()
    } else {
        (1..=args.n_max).collect()
    };
    if let Some(&bad) = ns.iter().find(|&&n| n == 0) {
        return Err(usage(format!("N must be positive, got {bad}")));
    }
    if let (true, Some(h)) = (explicit, args.h) {
        for &n in &ns {
            check_h_le_n(h, n)?;
        }
    }
    let kinds: Vec<ModelKind> = match args.model {
        Some(k) => vec![k.into()],
        None => vec![
            ModelKind::Classical,
            ModelKind::Quantum,
            ModelKind::Synthetic,
        ],
    };
    config.n = ns.clone();

    let mut rows = Vec::new();
    for &n in &ns {
        let hs: Vec<usize> = match args.h {
            Some(h) if h <= n => vec![h],
            Some(_) => vec![],
            None => (1..=n).collect(),
        };
        for &h in &hs {
            rows.push(VerifyRow {
                check: "coherence-sum",
                model: None,
                n,
                h: Some(h),
                deviation: 0.0,
                passed: coherence_sum_matches_identity(h, n)?,
            });
        }
        if n <= PAIRING_CHECK_MAX_N && args.h.is_none() {
            let (_, bad) = pairing_identity_check(n)?;
            rows.push(VerifyRow {
                check: "pairing",
                model: None,
                n,
                h: None,
                deviation: bad as f64,
                passed: bad == 0,
            });
        }
        for &kind in &kinds {
            match kind {
                ModelKind::Classical if hs.contains(&1) => {
                    rows.push(lemma_row(&classical_model(n)?, args.corrupt, args.tol)?)
                }
                ModelKind::Quantum if n >= 2 && hs.contains(&2) => {
                    rows.push(lemma_row(&quantum_model(n)?, args.corrupt, args.tol)?)
                }
                ModelKind::Synthetic => {
                    for &h in &hs {
                        let m = match &args.dims {
                            Some(d) => synthetic_model_with_dims(n, h, &d.0)?,
                            None => synthetic_model(n, h)?,
                        };
                        rows.push(lemma_row(&m, args.corrupt, args.tol)?);
                    }
                }
                _ => {}
            }
        }
    }

    println!(
        "{:<14} {:<10} {:>4} {:>3} {:>12}  result",
        "check", "model", "N", "h", "deviation"
    );
    for r in &rows {
        println!(
            "{:<14} {:<10} {:>4} {:>3} {:>12.3e}  {}",
            r.check,
            r.model.map(|k| k.to_string()).unwrap_or_else(|| "-".into()),
            r.n,
            r.h.map(|h| h.to_string()).unwrap_or_else(|| "-".into()),
            r.deviation,
            if r.passed { "PASS" } else { "FAIL" }
        );
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    println!("{} checks, {} failed", rows.len(), failed);

    match args.format {
        Format::Json => write_json(args, config, &rows)?,
        Format::Csv => {
            if let Some(mut w) = open_out(args)? {
                let err = |e: std::io::Error| usage(format!("write failed: {e}"));
                writeln!(w, "# version: {}", interference_core::VERSION).map_err(err)?;
                writeln!(w, "# config: {}", config.to_json()).map_err(err)?;
                writeln!(w, "check,model,N,h,deviation,passed").map_err(err)?;
                for r in &rows {
                    writeln!(
                        w,
                        "{},{},{},{},{},{}",
                        r.check,
                        r.model.map(|k| k.to_string()).unwrap_or_default(),
                        r.n,
                        r.h.map(|h| h.to_string()).unwrap_or_default(),
                        r.deviation,
                        r.passed
                    )
                    .map_err(err)?;
                }
                w.flush().map_err(err)?;
            }
        }
    }
    Ok(if failed == 0 {
        Outcome::Pass
    } else {
        Outcome::Violation
    })
}

// ---------------------------------------------------------------- search / bound

struct Runs {
    model: Model,
    k: usize,
    reports: Vec<ProgressReport>,
}

fn resolve_strategy(args: &CommonArgs, kind: ModelKind) -> Strategy {
    args.strategy
        .map(Strategy::from)
        .unwrap_or_else(|| Strategy::default_for(kind))
}

fn strategy_arg(s: Strategy) -> StrategyArg {
    match s {
        Strategy::Grover => StrategyArg::Grover,
        Strategy::Reflect => StrategyArg::Reflect,
        Strategy::Random => StrategyArg::Random,
    }
}

fn seed_list(args: &CommonArgs, strategy: Strategy) -> Result<Vec<u64>> {
    if args.seeds == 0 {
        return Err(usage("--seeds must be at least 1"));
    }
    Ok(match strategy {
        Strategy::Random => (0..args.seeds).collect(),
        _ => vec![0],
    })
}

fn simulate(args: &CommonArgs, config: &mut RunConfig) -> Result<Runs> {
    let kind: ModelKind = args.model.unwrap_or(KindArg::Quantum).into();
    let n = single_n(args, 4)?;
    let model = build_model(kind, n, args)?;
    let strategy = resolve_strategy(args, kind);
    let k = args.k_max.unwrap_or_else(|| default_k_max(n));
    config.model = Some(args.model.unwrap_or(KindArg::Quantum));
    config.n = vec![n];
    config.h = Some(model.h());
    config.strategy = Some(strategy_arg(strategy));
    config.k_max = Some(k);

    let mut reports = Vec::new();
    for seed in seed_list(args, strategy)? {
        let schedule = build_schedule(&model, strategy, seed, k, args.tol)?;
        reports.push(progress_all_items(
            &model,
            &schedule,
            &uniform_start(&model),
        )?);
    }
    Ok(Runs { model, k, reports })
}

fn write_reports<T: Serialize>(
    args: &CommonArgs,
    config: &RunConfig,
    reports: &[ProgressReport],
    json: &T,
) -> Result<()> {
    match args.format {
        Format::Json => write_json(args, config, json),
        Format::Csv => match open_out(args)? {
            Some(mut w) => write_progress_csv(&mut w, &config.to_json(), reports),
            None => Ok(()),
        },
    }
}

pub fn search(args: &CommonArgs, config: &mut RunConfig) -> Result<Outcome> {
    let runs = simulate(args, config)?;
    let m = &runs.model;
    for r in &runs.reports {
        println!(
            "model={} N={} h={} strategy={} K={}",
            m.kind(),
            m.n(),
            m.h(),
            r.provenance,
            runs.k
        );
        println!("{:>5} {:>14} {:>14}", "k", "success_mean", "success_min");
        for s in &r.steps {
            println!(
                "{:>5} {:>14.9} {:>14.9}",
                s.k, s.success_mean, s.success_min
            );
        }
        match first_success_k(r, SuccessMode::PerItem) {
            Some(k) => println!("k* = {k} (success_min {:.9})", r.steps[k].success_min),
            None => println!("saturated: success below 1/2 for every k <= {}", runs.k),
        }
    }
    write_reports(args, config, &runs.reports, &runs.reports)?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct BoundResult<'a> {
    report: &'a ProgressReport,
    upper: UpperBoundCheck,
    lower: LowerBoundCheck,
}

pub fn bound(args: &CommonArgs, config: &mut RunConfig) -> Result<Outcome> {
    let runs = simulate(args, config)?;
    let mut results = Vec::new();
    for r in &runs.reports {
        let upper = upper_bound_check(r, args.tol);
        let lower = lower_bound_check(r, SuccessMode::PerItem, args.tol);
        println!(
            "{}: upper {} (worst D_k - 4hk^2 = {:.6e}); lower {} (k* = {}, D = {}, threshold = {:.6})",
            r.provenance,
            if upper.passed { "PASS" } else { "FAIL" },
            upper.worst_margin,
            if lower.passed { "PASS" } else { "FAIL" },
            lower.crossing.map(|k| k.to_string()).unwrap_or_else(|| "none".into()),
            lower.d_at_crossing.map(|d| format!("{d:.6}")).unwrap_or_else(|| "-".into()),
            lower.threshold,
        );
        results.push(BoundResult {
            report: r,
            upper,
            lower,
        });
    }
    let ok = results.iter().all(|b| b.upper.passed && b.lower.passed);
    write_reports(args, config, &runs.reports, &results)?;
    Ok(if ok {
        Outcome::Pass
    } else {
        Outcome::Violation
    })
}

// ---------------------------------------------------------------- sweep

pub fn sweep(args: &CommonArgs, config: &mut RunConfig) -> Result<Outcome> {
    let kind_arg = args.model.unwrap_or(KindArg::Quantum);
    let kind: ModelKind = kind_arg.into();
    let ns = if args.n.is_empty() {
        vec![4, 16, 64]
    } else {
        args.n.clone()
    };
    let family = match kind {
        ModelKind::Classical => {
            if args.h.is_some_and(|h| h != 1) {
                return Err(usage("classical models have h = 1"));
            }
            ModelFamily::classical()
        }
        ModelKind::Quantum => {
            if args.h.is_some_and(|h| h != 2) {
                return Err(usage("quantum models have h = 2"));
            }
            ModelFamily::quantum()
        }
        ModelKind::Synthetic => ModelFamily {
            kind,
            h: args.h.unwrap_or(SYNTHETIC_DEFAULT_H),
            dims_per_size: args.dims.as_ref().map(|d| d.0.clone()),
        },
    };
    for &n in &ns {
        check_h_le_n(family.h, n)?;
    }
    let strategy = resolve_strategy(args, kind);
    config.model = Some(kind_arg);
    config.n = ns.clone();
    config.h = Some(family.h);
    config.strategy = Some(strategy_arg(strategy));

    let mut tables: Vec<SweepTable> = Vec::new();
    for seed in seed_list(args, strategy)? {
        tables.push(scaling_sweep(
            &family,
            &ns,
            strategy,
            seed,
            args.k_max,
            SuccessMode::PerItem,
            args.tol,
        )?);
    }

    let mut ok = true;
    for t in &tables {
        println!(
            "model={} h={} strategy={} seed={}",
            t.family.kind, t.family.h, t.strategy, t.seed
        );
        println!(
            "{:>6} {:>7} {:>6} {:>8} {:>10}",
            "N", "k*", "K", "grover", "floor"
        );
        for r in &t.rows {
            let k = r
                .k_star
                .map(|k| k.to_string())
                .unwrap_or_else(|| "sat".into());
            println!(
                "{:>6} {:>7} {:>6} {:>8} {:>10.4}",
                r.n, k, r.k_max, r.grover_count, r.floor
            );
            if r.k_star.is_some_and(|k| (k as f64) < r.floor - 1.0) {
                ok = false;
            }
        }
        match t.fitted_exponent {
            Some(e) => println!("fitted exponent: {e:.4}"),
            None => println!("fitted exponent: n/a"),
        }
    }

    match args.format {
        Format::Json => write_json(args, config, &tables)?,
        Format::Csv => {
            if let Some(mut w) = open_out(args)? {
                for t in &tables {
                    write_sweep_csv(&mut w, &config.to_json(), t)?;
                }
            }
        }
    }
    Ok(if ok {
        Outcome::Pass
    } else {
        Outcome::Violation
    })
}
