//! Numerical checks of the coherence-projector lemmas on a concrete model:
//! the identity decomposes as `Σ_I ω_I`, the `ω_I` are mutually orthogonal
//! idempotents, and `‖s‖² = Σ_I ‖ω_I s‖²`.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::projectors::coherence_projectors;
use super::{LinearMap, Model};
use crate::error::{check_dim, invalid, Result};

/// Number of random vectors used for the Pythagoras check.
pub const PYTHAGORAS_SAMPLES: usize = 100;

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    /// `‖Σ_I ω_I − 𝟙‖_max`.
    pub decomposition_deviation: f64,
    /// `max_{I,J} ‖ω_I ω_J − δ_IJ ω_I‖_max`.
    pub orthogonality_deviation: f64,
    /// `max_s |‖s‖² − Σ_I ‖ω_I s‖²|` over the sampled unit vectors.
    pub pythagoras_deviation: f64,
    pub samples: usize,
}

impl LemmaReport {
    pub fn lemma1_holds(&self, tol: f64) -> bool {
        self.decomposition_deviation < tol
    }

    pub fn lemma2_holds(&self, tol: f64) -> bool {
        self.orthogonality_deviation < tol && self.pythagoras_deviation < tol
    }
}

/// Seeded standard-normal vectors scaled to unit norm.
pub fn random_unit_vectors(dim: usize, count: usize, seed: u64) -> Vec<DVector<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = DVector::<f64>::from_fn(dim, |_, _| StandardNormal.sample(&mut rng));
            let n = v.norm();
            v / n
        })
        .collect()
}

/// Runs all lemma checks against an explicit set of coherence projectors.
pub fn check_lemmas_with(
    dim: usize,
    projectors: &[LinearMap],
    samples: usize,
    seed: u64,
) -> Result<LemmaReport> {
    if projectors.is_empty() {
        return invalid("no projectors supplied");
    }
    for p in projectors {
        check_dim(dim, p.dim())?;
    }

    let mut sum = LinearMap::zero(dim);
    for p in projectors {
        sum = sum.add(p)?;
    }
    let decomposition_deviation = sum.max_abs_diff(&LinearMap::identity(dim))?;

    let zero = LinearMap::zero(dim);
    let mut orthogonality_deviation = 0.0f64;
    for (i, a) in projectors.iter().enumerate() {
        for (j, b) in projectors.iter().enumerate() {
            let prod = a.compose(b)?;
            let target = if i == j { a } else { &zero };
            orthogonality_deviation = orthogonality_deviation.max(prod.max_abs_diff(target)?);
        }
    }

    let mut pythagoras_deviation = 0.0f64;
    for v in random_unit_vectors(dim, samples, seed) {
        let mut parts = 0.0;
        for p in projectors {
            parts += p.apply(&v)?.norm_squared();
        }
        pythagoras_deviation = pythagoras_deviation.max((v.norm_squared() - parts).abs());
    }

    Ok(LemmaReport {
        decomposition_deviation,
        orthogonality_deviation,
        pythagoras_deviation,
        samples,
    })
}

pub fn lemma_report(model: &Model, seed: u64) -> Result<LemmaReport> {
    check_lemmas_with(
        model.dim(),
        &coherence_projectors(model),
        PYTHAGORAS_SAMPLES,
        seed,
    )
}

pub fn verify_lemma1(model: &Model, tol: f64) -> Result<bool> {
    Ok(lemma_report(model, 0)?.lemma1_holds(tol))
}

pub fn verify_lemma2(model: &Model, tol: f64) -> Result<bool> {
    Ok(lemma_report(model, 0)?.lemma2_holds(tol))
}

/// Coherence projectors with the first one halved; a negative control.
pub fn corrupted_coherence_projectors(model: &Model) -> Result<Vec<LinearMap>> {
    let mut ps = coherence_projectors(model);
    ps[0] = ps[0].scaled(0.5)?;
    Ok(ps)
}
