use nalgebra::DVector;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::schedule::{Provenance, Schedule};
use super::trajectory::{oracle_free_series, walk_with_oracle, Scratch, TrajectoryPair};
use crate::error::{check_dim, invalid, Result};
use crate::theory_models::{Model, ModelDescriptor, StateVector};

/// Progress measures after `k` queries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProgressStep {
    pub k: usize,
    /// `D_k = Σ_x ‖s_k^x − s_k‖²`.
    pub d: f64,
    /// `4 h k²`.
    pub upper: f64,
    /// `E_k = Σ_x ‖s_k^x − a^x‖²`.
    pub e: f64,
    /// `F_k = Σ_x ‖s_k − a^x‖²`.
    pub f: f64,
    /// `max(0, √F_k − √E_k)²`, a lower bound on `D_k`.
    pub lower_exact: f64,
    /// `⟨a^x, s_k^x⟩` per marked item.
    pub success: Vec<f64>,
    pub success_mean: f64,
    pub success_min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProgressReport {
    pub model: ModelDescriptor,
    pub provenance: Provenance,
    pub marked: Vec<usize>,
    pub steps: Vec<ProgressStep>,
}

impl ProgressReport {
    pub fn n(&self) -> usize {
        self.model.n
    }

    pub fn h(&self) -> usize {
        self.model.h
    }

    pub fn last(&self) -> &ProgressStep {
        self.steps
            .last()
            .expect("a report has at least the k = 0 row")
    }
}

/// Per-item contribution at one step: `(‖s^x − s‖², ‖s^x − a^x‖², ⟨a^x, s^x⟩)`.
type ItemStep = (f64, f64, f64);

/// `(‖a − b‖², ‖a‖²)` with independent accumulator lanes so the loop vectorises.
fn dist_and_norm(a: &[f64], b: &[f64]) -> (f64, f64) {
    const L: usize = 8;
    let mut d = [0.0; L];
    let mut n = [0.0; L];
    let (ca, cb) = (a.chunks_exact(L), b.chunks_exact(L));
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        for l in 0..L {
            let t = x[l] - y[l];
            d[l] += t * t;
            n[l] += x[l] * x[l];
        }
    }
    let mut dt: f64 = d.iter().sum();
    let mut nt: f64 = n.iter().sum();
    for (x, y) in ra.iter().zip(rb) {
        dt += (x - y) * (x - y);
        nt += x * x;
    }
    (dt, nt)
}

fn item_step(sx: &DVector<f64>, s: &DVector<f64>, off: usize) -> ItemStep {
    let (d, nx) = dist_and_norm(sx.as_slice(), s.as_slice());
    let p = sx[off];
    let e = nx - 2.0 * p + 1.0;
    (d, e, p)
}

fn assemble(
    model: &Model,
    provenance: &Provenance,
    marked: &[usize],
    free: &[DVector<f64>],
    per_item: Vec<Vec<ItemStep>>,
) -> Result<ProgressReport> {
    let h = model.h() as f64;
    let offsets = marked
        .iter()
        .map(|&x| model.space().singleton_offset(x))
        .collect::<Result<Vec<_>>>()?;
    let mut steps = Vec::with_capacity(free.len());
    for (k, s) in free.iter().enumerate() {
        let norm2 = s.norm_squared();
        let mut d = 0.0;
        let mut e = 0.0;
        let mut f = 0.0;
        let mut success = Vec::with_capacity(marked.len());
        for (i, &off) in offsets.iter().enumerate() {
            let (di, ei, pi) = per_item[i][k];
            d += di;
            e += ei;
            f += norm2 - 2.0 * s[off] + 1.0;
            success.push(pi);
        }
        let gap = (f.max(0.0).sqrt() - e.max(0.0).sqrt()).max(0.0);
        let success_mean = success.iter().sum::<f64>() / success.len() as f64;
        let success_min = success.iter().copied().fold(f64::INFINITY, f64::min);
        steps.push(ProgressStep {
            k,
            d,
            upper: 4.0 * h * (k * k) as f64,
            e,
            f,
            lower_exact: gap * gap,
            success,
            success_mean,
            success_min,
        });
    }
    Ok(ProgressReport {
        model: model.descriptor().clone(),
        provenance: provenance.clone(),
        marked: marked.to_vec(),
        steps,
    })
}

/// Progress measures from a stored trajectory.
pub fn progress_measures(model: &Model, traj: &TrajectoryPair) -> Result<ProgressReport> {
    let free: Vec<DVector<f64>> = traj
        .without_oracle
        .iter()
        .map(|s| s.coords().clone())
        .collect();
    let mut per_item = Vec::with_capacity(traj.marked.len());
    for (&x, run) in traj.marked.iter().zip(&traj.with_oracle) {
        let off = model.space().singleton_offset(x)?;
        per_item.push(
            run.iter()
                .zip(&free)
                .map(|(sx, s)| item_step(sx.coords(), s, off))
                .collect(),
        );
    }
    assemble(model, &traj.provenance, &traj.marked, &free, per_item)
}

/// Same measures as [`progress_measures`] without storing the oracle runs;
/// items are simulated in parallel.
pub fn progress_streaming(
    model: &Model,
    schedule: &Schedule,
    start: &StateVector,
    marked: &[usize],
) -> Result<ProgressReport> {
    check_dim(model.dim(), start.dim())?;
    if marked.is_empty() {
        return invalid("no marked items given");
    }
    let free = oracle_free_series(schedule, start.coords())?;
    let per_item = marked
        .par_iter()
        .map_init(
            || Scratch::new(model.dim()),
            |scratch, &x| -> Result<Vec<ItemStep>> {
                let off = model.space().singleton_offset(x)?;
                let mut out = Vec::with_capacity(free.len());
                walk_with_oracle(
                    model,
                    schedule,
                    start.coords(),
                    x,
                    schedule.len(),
                    scratch,
                    |k, sx| {
                        out.push(item_step(sx, &free[k], off));
                        true
                    },
                )?;
                Ok(out)
            },
        )
        .collect::<Result<Vec<_>>>()?;
    assemble(model, schedule.provenance(), marked, &free, per_item)
}

/// Streaming progress over every item `0..N`.
pub fn progress_all_items(
    model: &Model,
    schedule: &Schedule,
    start: &StateVector,
) -> Result<ProgressReport> {
    let all: Vec<usize> = (0..model.n()).collect();
    progress_streaming(model, schedule, start, &all)
}
