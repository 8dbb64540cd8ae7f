use nalgebra::DVector;

use super::schedule::{Provenance, Schedule};
use crate::error::{check_dim, invalid, Error, Result};
use crate::theory_models::{flipped_ranges, sign_flip_oracle, Model, StateVector};

/// Upper bound on the number of `f64` coordinates a stored trajectory may hold.
pub const MAX_STORED_COORDS: usize = 1 << 27;

/// The oracle-free run `s_0, …, s_K` alongside one oracle run per marked item.
#[derive(Debug, Clone)]
pub struct TrajectoryPair {
    pub provenance: Provenance,
    pub marked: Vec<usize>,
    /// `s_k` for `k = 0..=K`.
    pub without_oracle: Vec<StateVector>,
    /// `with_oracle[i][k]` is `s_k^x` for `x = marked[i]`.
    pub with_oracle: Vec<Vec<StateVector>>,
}

impl TrajectoryPair {
    pub fn steps(&self) -> usize {
        self.without_oracle.len() - 1
    }
}

/// `s_0, G_1 s_0, G_2 G_1 s_0, …` as raw coordinates.
pub(crate) fn oracle_free_series(
    schedule: &Schedule,
    start: &DVector<f64>,
) -> Result<Vec<DVector<f64>>> {
    let mut out = Vec::with_capacity(schedule.len() + 1);
    out.push(start.clone());
    for g in schedule.steps() {
        let next = g.apply(out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}

/// Two state-sized buffers reused across oracle runs.
pub(crate) struct Scratch {
    cur: DVector<f64>,
    next: DVector<f64>,
}

impl Scratch {
    pub(crate) fn new(dim: usize) -> Self {
        Scratch {
            cur: DVector::zeros(dim),
            next: DVector::zeros(dim),
        }
    }
}

/// Runs `s_k^x = G_k 𝒪_x s_{k−1}^x` for at most `upto` steps, calling `visit`
/// with every state including `s_0`. Stops early if `visit` returns false.
pub(crate) fn walk_with_oracle<F>(
    model: &Model,
    schedule: &Schedule,
    start: &DVector<f64>,
    x: usize,
    upto: usize,
    scratch: &mut Scratch,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(usize, &DVector<f64>) -> bool,
{
    let flips = flipped_ranges(model, x)?;
    check_dim(start.len(), scratch.cur.len())?;
    let Scratch { cur: s, next } = scratch;
    s.copy_from(start);
    if !visit(0, s) {
        return Ok(());
    }
    for (k, g) in schedule.steps().iter().take(upto).enumerate() {
        for r in &flips {
            s.rows_mut(r.start, r.len()).neg_mut();
        }
        g.apply_into(s, next)?;
        std::mem::swap(s, next);
        if !visit(k + 1, s) {
            break;
        }
    }
    Ok(())
}

/// Simulates the oracle-free run and the oracle run for each item in `marked`.
pub fn run_search(
    model: &Model,
    marked: &[usize],
    schedule: &Schedule,
    start: &StateVector,
) -> Result<TrajectoryPair> {
    check_dim(model.dim(), start.dim())?;
    if let Some(g) = schedule.steps().first() {
        check_dim(model.dim(), g.dim())?;
    }
    if marked.is_empty() {
        return invalid("no marked items given");
    }
    let stored = (marked.len() + 1)
        .saturating_mul(schedule.len() + 1)
        .saturating_mul(model.dim());
    if stored > MAX_STORED_COORDS {
        return Err(Error::ResourceLimit(format!(
            "storing {stored} coordinates exceeds {MAX_STORED_COORDS}; use the streaming progress routine"
        )));
    }

    let wrap = |v: DVector<f64>| start.with_coords(v);
    let without_oracle = oracle_free_series(schedule, start.coords())?
        .into_iter()
        .map(wrap)
        .collect::<Result<Vec<_>>>()?;

    let mut with_oracle = Vec::with_capacity(marked.len());
    let mut scratch = Scratch::new(model.dim());
    for &x in marked {
        let mut run = Vec::with_capacity(schedule.len() + 1);
        walk_with_oracle(
            model,
            schedule,
            start.coords(),
            x,
            schedule.len(),
            &mut scratch,
            |_, s| {
                run.push(s.clone());
                true
            },
        )?;
        with_oracle.push(run.into_iter().map(wrap).collect::<Result<Vec<_>>>()?);
    }

    Ok(TrajectoryPair {
        provenance: schedule.provenance().clone(),
        marked: marked.to_vec(),
        without_oracle,
        with_oracle,
    })
}

/// `⟨a^x, s⟩`, the probability of reading out `x` (not clamped to `[0, 1]`).
pub fn success_probability(model: &Model, s: &StateVector, x: usize) -> Result<f64> {
    check_dim(model.dim(), s.dim())?;
    Ok(s.coords()[model.space().singleton_offset(x)?])
}

/// `Σ_x ‖(𝟙 − 𝒪_x) s‖²` over all items.
pub fn displacement_sum(model: &Model, s: &StateVector) -> Result<f64> {
    check_dim(model.dim(), s.dim())?;
    let mut total = 0.0;
    for x in 0..model.n() {
        let o = sign_flip_oracle(model, x)?;
        let moved = o.map.apply(s.coords())?;
        total += (s.coords() - moved).norm_squared();
    }
    Ok(total)
}
