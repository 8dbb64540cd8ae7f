use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bounds::{asymptotic_floor, grover_count, SuccessMode};
use super::schedule::{build_schedule, default_k_max, uniform_start, Schedule, Strategy};
use super::trajectory::{walk_with_oracle, Scratch};
use crate::error::{check_dim, invalid, Result};
use crate::theory_models::{
    classical_model, quantum_model, synthetic_model, synthetic_model_with_dims, Model, ModelKind,
    StateVector,
};

/// A model kind with fixed `h` (and optional sector dimensions) over varying `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFamily {
    pub kind: ModelKind,
    pub h: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims_per_size: Option<BTreeMap<usize, usize>>,
}

impl ModelFamily {
    pub fn classical() -> Self {
        ModelFamily {
            kind: ModelKind::Classical,
            h: 1,
            dims_per_size: None,
        }
    }

    pub fn quantum() -> Self {
        ModelFamily {
            kind: ModelKind::Quantum,
            h: 2,
            dims_per_size: None,
        }
    }

    pub fn synthetic(h: usize) -> Self {
        ModelFamily {
            kind: ModelKind::Synthetic,
            h,
            dims_per_size: None,
        }
    }

    pub fn instantiate(&self, n: usize) -> Result<Model> {
        match self.kind {
            ModelKind::Classical => classical_model(n),
            ModelKind::Quantum => quantum_model(n),
            ModelKind::Synthetic => match &self.dims_per_size {
                Some(d) => synthetic_model_with_dims(n, self.h, d),
                None => synthetic_model(n, self.h),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub h: usize,
    /// First step with success ½; `None` if not reached within `k_max`.
    pub k_star: Option<usize>,
    pub saturated: bool,
    pub k_max: usize,
    pub floor: f64,
    pub grover_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub family: ModelFamily,
    pub strategy: Strategy,
    pub seed: u64,
    pub mode: SuccessMode,
    pub rows: Vec<SweepRow>,
    /// Least-squares slope of `ln k*` against `ln N` over unsaturated rows.
    pub fitted_exponent: Option<f64>,
}

/// First `k ≤ schedule.len()` at which the run succeeds, without storing
/// states. Per-item mode prunes candidate steps item by item.
pub fn first_success_step(
    model: &Model,
    schedule: &Schedule,
    start: &StateVector,
    mode: SuccessMode,
) -> Result<Option<usize>> {
    check_dim(model.dim(), start.dim())?;
    let n = model.n();
    let k_max = schedule.len();
    let mut scratch = Scratch::new(model.dim());
    let mut series = |x: usize, upto: usize| -> Result<Vec<f64>> {
        let off = model.space().singleton_offset(x)?;
        let mut out = Vec::with_capacity(upto + 1);
        walk_with_oracle(
            model,
            schedule,
            start.coords(),
            x,
            upto,
            &mut scratch,
            |_, s| {
                out.push(s[off]);
                true
            },
        )?;
        Ok(out)
    };

    match mode {
        SuccessMode::Averaged => {
            let mut total = vec![0.0; k_max + 1];
            for x in 0..n {
                for (t, p) in total.iter_mut().zip(series(x, k_max)?) {
                    *t += p;
                }
            }
            Ok(total.iter().position(|t| t / n as f64 >= 0.5))
        }
        SuccessMode::PerItem => {
            let mut alive: Vec<bool> = series(0, k_max)?.iter().map(|&p| p >= 0.5).collect();
            'candidates: while let Some(cand) = alive.iter().position(|&a| a) {
                for x in 1..n {
                    let s = series(x, cand)?;
                    for (k, p) in s.iter().enumerate() {
                        if *p < 0.5 {
                            alive[k] = false;
                        }
                    }
                    if !alive[cand] {
                        continue 'candidates;
                    }
                }
                return Ok(Some(cand));
            }
            Ok(None)
        }
    }
}

/// Least-squares slope through `(ln x, ln y)`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Minimal successful query count over a range of `N`.
pub fn scaling_sweep(
    family: &ModelFamily,
    n_list: &[usize],
    strategy: Strategy,
    seed: u64,
    k_max: Option<usize>,
    mode: SuccessMode,
    tol: f64,
) -> Result<SweepTable> {
    if n_list.is_empty() {
        return invalid("empty N list");
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let model = family.instantiate(n)?;
        let k = k_max.unwrap_or_else(|| default_k_max(n));
        let schedule = build_schedule(&model, strategy, seed, k, tol)?;
        let k_star = first_success_step(&model, &schedule, &uniform_start(&model), mode)?;
        rows.push(SweepRow {
            n,
            h: model.h(),
            k_star,
            saturated: k_star.is_none(),
            k_max: k,
            floor: asymptotic_floor(n, model.h()),
            grover_count: grover_count(n),
        });
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.k_star.map(|k| (r.n as f64, k as f64)))
        .collect();
    Ok(SweepTable {
        family: family.clone(),
        strategy,
        seed,
        mode,
        fitted_exponent: log_log_slope(&pts),
        rows,
    })
}
