use nalgebra::DVector;

use super::{LinearMap, Model};
use crate::error::{invalid, Error, Result};
use crate::sector_algebra::{coeff_c, SignedSubsetCombination, SlitSet};

/// Largest `N` for which routines enumerate every subset of the slits.
pub const MAX_SUBSET_UNIVERSE: usize = 12;

fn check_universe(model: &Model, set: &SlitSet) -> Result<()> {
    if set.universe_size() != model.n() {
        return invalid(format!(
            "slit set {set} belongs to a universe of size {}, model has N = {}",
            set.universe_size(),
            model.n()
        ));
    }
    Ok(())
}

/// Orthogonal projector `ω_I` onto the coordinate block of sector `I`.
pub fn coherence_projector(model: &Model, set: &SlitSet) -> Result<LinearMap> {
    check_universe(model, set)?;
    let r = model.space().block(set)?;
    let mut d = DVector::zeros(model.dim());
    d.rows_mut(r.start, r.len()).fill(1.0);
    Ok(LinearMap::Diagonal(d))
}

/// All coherence projectors in canonical sector order.
pub fn coherence_projectors(model: &Model) -> Vec<LinearMap> {
    let space = model.space();
    (0..space.num_sectors())
        .map(|i| {
            let r = space.block_at(i);
            let mut d = DVector::zeros(model.dim());
            d.rows_mut(r.start, r.len()).fill(1.0);
            LinearMap::Diagonal(d)
        })
        .collect()
}

/// Slit projector `P_I = Σ_{∅≠J⊆I, |J|≤h} ω_J`; `P_∅` is the zero map.
pub fn slit_projector(model: &Model, set: &SlitSet) -> Result<LinearMap> {
    check_universe(model, set)?;
    let space = model.space();
    let mut d = DVector::zeros(model.dim());
    for (i, sector) in space.sectors().iter().enumerate() {
        if sector.len() <= set.len() && sector.is_subset(set) {
            let r = space.block_at(i);
            d.rows_mut(r.start, r.len()).fill(1.0);
        }
    }
    Ok(LinearMap::Diagonal(d))
}

/// `Σ c_J P_J` for a formal combination of slit projectors.
pub fn instantiate(model: &Model, comb: &SignedSubsetCombination) -> Result<LinearMap> {
    let mut d = DVector::zeros(model.dim());
    for (set, c) in comb.iter() {
        let p = slit_projector(model, set)?;
        d.axpy(
            c as f64,
            p.as_diagonal().expect("slit projectors are diagonal"),
            1.0,
        );
    }
    Ok(LinearMap::Diagonal(d))
}

/// Every nonempty subset of `{0..N−1}`; `N ≤ MAX_SUBSET_UNIVERSE`.
pub fn all_slit_sets(n: usize) -> Result<Vec<SlitSet>> {
    if n > MAX_SUBSET_UNIVERSE {
        return Err(Error::ResourceLimit(format!(
            "N = {n} exceeds subset enumeration limit {MAX_SUBSET_UNIVERSE}"
        )));
    }
    let full = SlitSet::full(n)?;
    let mut out: Vec<SlitSet> = full.subsets().filter(|s| !s.is_empty()).collect();
    out.sort();
    Ok(out)
}

/// Residual `‖Σ_{|I|≤k} C(k,|I|,N) P_I − 𝟙‖_max` of the order-`k`
/// identity decomposition, built from the model's own slit projectors.
pub fn identity_decomposition_residual(model: &Model, k: usize) -> Result<f64> {
    let n = model.n();
    let mut d = DVector::zeros(model.dim());
    for set in all_slit_sets(n)?.into_iter().filter(|s| s.len() <= k) {
        let c = coeff_c(k, set.len(), n)?;
        if c != 0 {
            let p = slit_projector(model, &set)?;
            d.axpy(c as f64, p.as_diagonal().expect("diagonal"), 1.0);
        }
    }
    LinearMap::Diagonal(d).max_abs_diff(&LinearMap::identity(model.dim()))
}

/// Smallest `k` whose identity decomposition holds within `tol`.
pub fn detect_order_of_interference(model: &Model, tol: f64) -> Result<usize> {
    for k in 1..=model.n() {
        if identity_decomposition_residual(model, k)? < tol {
            return Ok(k);
        }
    }
    // the k = N decomposition is the full-set projector, which always holds
    unreachable!("P_full is the identity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sector_algebra::coherence_coeffs;
    use crate::theory_models::{classical_model, quantum_model, synthetic_model};

    fn set(n: usize, m: &[usize]) -> SlitSet {
        SlitSet::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn qutrit_coherence_projector_keeps_only_offdiagonal_block() {
        let q = quantum_model(3).unwrap();
        let w = coherence_projector(&q, &set(3, &[0, 1])).unwrap();
        // layout: ρ00 ρ11 ρ22 | (0,1) | (0,2) | (1,2)
        assert_eq!(
            w.as_diagonal().unwrap().as_slice(),
            &[0., 0., 0., 1., 1., 0., 0., 0., 0.]
        );
    }

    #[test]
    fn qutrit_slit_projector_zeroes_row_and_column_two() {
        let q = quantum_model(3).unwrap();
        let p = slit_projector(&q, &set(3, &[0, 1])).unwrap();
        assert_eq!(
            p.as_diagonal().unwrap().as_slice(),
            &[1., 1., 0., 1., 1., 0., 0., 0., 0.]
        );
    }

    #[test]
    fn full_set_projector_is_identity() {
        for m in [
            classical_model(4).unwrap(),
            quantum_model(4).unwrap(),
            synthetic_model(4, 3).unwrap(),
        ] {
            let p = slit_projector(&m, &SlitSet::full(4).unwrap()).unwrap();
            assert_eq!(p.max_abs_diff(&LinearMap::identity(m.dim())).unwrap(), 0.0);
        }
    }

    #[test]
    fn empty_set_projector_is_zero() {
        let q = quantum_model(3).unwrap();
        let p = slit_projector(&q, &SlitSet::empty(3).unwrap()).unwrap();
        assert_eq!(p.as_diagonal().unwrap().amax(), 0.0);
    }

    #[test]
    fn coherence_projector_equals_formal_expansion() {
        for m in [quantum_model(4).unwrap(), synthetic_model(4, 4).unwrap()] {
            for s in m.space().sectors().to_vec() {
                let direct = coherence_projector(&m, &s).unwrap();
                let formal = instantiate(&m, &coherence_coeffs(&s).unwrap()).unwrap();
                assert_eq!(direct.max_abs_diff(&formal).unwrap(), 0.0, "{s}");
            }
        }
    }

    #[test]
    fn order_of_interference_detection() {
        assert_eq!(
            detect_order_of_interference(&classical_model(5).unwrap(), 1e-9).unwrap(),
            1
        );
        assert_eq!(
            detect_order_of_interference(&quantum_model(5).unwrap(), 1e-9).unwrap(),
            2
        );
        assert_eq!(
            detect_order_of_interference(&synthetic_model(6, 4).unwrap(), 1e-9).unwrap(),
            4
        );
        // C(2,1,4) = −2 is what makes the quantum N = 4 decomposition close
        assert_eq!(
            identity_decomposition_residual(&quantum_model(4).unwrap(), 2).unwrap(),
            0.0
        );
    }

    #[test]
    fn errors() {
        let q = quantum_model(3).unwrap();
        assert!(coherence_projector(&q, &set(3, &[0, 1, 2])).is_err());
        assert!(slit_projector(&q, &set(4, &[0])).is_err());
        assert!(all_slit_sets(13).is_err());
    }
}
