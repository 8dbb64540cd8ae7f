use std::ops::Range;

use nalgebra::DVector;
use serde::Serialize;

use super::projectors::{all_slit_sets, coherence_projector, slit_projector};
use super::{LinearMap, Model};
use crate::error::{check_dim, invalid, Result};
use crate::sector_algebra::SlitSet;

/// Above this `N` the axioms are checked in the `ω_I` form.
pub const SLIT_FORM_MAX_N: usize = 10;

/// A search oracle `𝒪_x` for the marked slit `x`.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub marked: usize,
    pub map: LinearMap,
}

/// Coordinate ranges negated by the sign-flip oracle for `x`: the blocks of
/// sectors `I ∋ x` with `|I| > 1`, with adjacent blocks merged.
pub fn flipped_ranges(model: &Model, x: usize) -> Result<Vec<Range<usize>>> {
    if x >= model.n() {
        return invalid(format!(
            "marked item {x} out of range for N = {}",
            model.n()
        ));
    }
    let space = model.space();
    let mut out: Vec<Range<usize>> = Vec::new();
    for (i, sector) in space.sectors().iter().enumerate() {
        if sector.len() > 1 && sector.contains(x) {
            let r = space.block_at(i);
            match out.last_mut() {
                Some(last) if last.end == r.start => last.end = r.end,
                _ => out.push(r),
            }
        }
    }
    Ok(out)
}

/// `+1` on sectors with `x ∉ I` or `|I| = 1`, `−1` on the rest.
pub fn sign_flip_oracle(model: &Model, x: usize) -> Result<Oracle> {
    let mut d = DVector::from_element(model.dim(), 1.0);
    for r in flipped_ranges(model, x)? {
        d.rows_mut(r.start, r.len()).fill(-1.0);
    }
    Ok(Oracle {
        marked: x,
        map: LinearMap::Diagonal(d),
    })
}

/// Which family of projectors the oracle conditions were checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleCheckForm {
    /// Slit projectors `P_I` for every nonempty `I`.
    SlitProjectors,
    /// Coherence projectors `ω_I` for every sector (equivalent form).
    CoherenceProjectors,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub marked: usize,
    pub form: OracleCheckForm,
    /// `max |𝒪_x P_I − P_I|` over `I` with `x ∉ I` or `|I| = 1`.
    pub fixed_deviation: f64,
    /// `max |𝒪_x P_I − P_I 𝒪_x|` over all `I`.
    pub commutation_deviation: f64,
    /// `‖𝒪ᵀ𝒪 − 𝟙‖_max`.
    pub orthogonality_deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Checks the search-oracle axioms for an arbitrary map.
pub fn verify_oracle(model: &Model, map: &LinearMap, x: usize, tol: f64) -> Result<OracleReport> {
    check_dim(model.dim(), map.dim())?;
    if x >= model.n() {
        return invalid(format!(
            "marked item {x} out of range for N = {}",
            model.n()
        ));
    }
    let (form, projectors): (OracleCheckForm, Vec<(SlitSet, LinearMap)>) =
        if model.n() <= SLIT_FORM_MAX_N {
            let sets = all_slit_sets(model.n())?;
            let ps = sets
                .into_iter()
                .map(|s| slit_projector(model, &s).map(|p| (s, p)))
                .collect::<Result<_>>()?;
            (OracleCheckForm::SlitProjectors, ps)
        } else {
            let ps = model
                .space()
                .sectors()
                .iter()
                .map(|s| coherence_projector(model, s).map(|p| (s.clone(), p)))
                .collect::<Result<_>>()?;
            (OracleCheckForm::CoherenceProjectors, ps)
        };

    let mut fixed = 0.0f64;
    let mut comm = 0.0f64;
    for (set, p) in &projectors {
        let op = map.compose(p)?;
        let po = p.compose(map)?;
        if !set.contains(x) || set.len() == 1 {
            fixed = fixed.max(op.max_abs_diff(p)?);
        }
        comm = comm.max(op.max_abs_diff(&po)?);
    }
    let orth = map.orthogonality_defect();
    Ok(OracleReport {
        marked: x,
        form,
        fixed_deviation: fixed,
        commutation_deviation: comm,
        orthogonality_deviation: orth,
        tol,
        passed: fixed < tol && comm < tol && orth < tol,
    })
}
