//! Exact combinatorics of the subset lattice: decomposition coefficients,
//! inclusion-exclusion expansions of coherence projectors, and pairing
//! counts. Everything here is integer arithmetic and model independent.
//!
//! The all-slits-blocked projector `P_∅` is taken to be zero, so it never
//! appears in a [`SignedSubsetCombination`].

mod coefficients;
mod combination;
mod pairing;
mod slit_set;

pub use coefficients::{
    binomial, coeff_c, coherence_coeffs, enumerate_sectors, identity_decomposition_coeffs,
    MAX_COEFF_UNIVERSE, MAX_SECTORS,
};
pub use combination::SignedSubsetCombination;
pub use pairing::{pairing_count_bruteforce, pairing_count_closed, MAX_PAIRING_BITS};
pub use slit_set::SlitSet;

use crate::error::Result;

/// `Σ_{1≤|I|≤h} ω_I` expanded into slit projectors.
pub fn expand_coherence_sum(h: usize, n: usize) -> Result<SignedSubsetCombination> {
    let mut total = SignedSubsetCombination::new();
    for set in enumerate_sectors(n, h)? {
        total += &coherence_coeffs(&set)?;
    }
    Ok(total)
}

/// `Σ_{∅≠J⊆I} ω_J` expanded into slit projectors; equals `{I ↦ 1}`.
pub fn expand_slit_projector(set: &SlitSet) -> Result<SignedSubsetCombination> {
    let mut total = SignedSubsetCombination::new();
    for sub in set.subsets().filter(|s| !s.is_empty()) {
        total += &coherence_coeffs(&sub)?;
    }
    Ok(total)
}

/// Whether `Σ_I ω_I` expands to exactly the order-`h` identity coefficients.
pub fn coherence_sum_matches_identity(h: usize, n: usize) -> Result<bool> {
    Ok(expand_coherence_sum(h, n)? == identity_decomposition_coeffs(h, n)?)
}

/// Compares brute-force and closed-form pairing counts over every
/// `I, J ⊆ {0..n−1}` and `K ⊆ I ∩ J`. Returns `(triples checked, mismatches)`.
pub fn pairing_identity_check(n: usize) -> Result<(usize, usize)> {
    let full = SlitSet::full(n)?;
    let all: Vec<SlitSet> = full.subsets().collect();
    let mut checked = 0;
    let mut bad = 0;
    for i in &all {
        for j in &all {
            for k in i.intersection(j).subsets() {
                checked += 1;
                if pairing_count_bruteforce(i, j, &k)? != pairing_count_closed(i, j, &k)? {
                    bad += 1;
                }
            }
        }
    }
    Ok((checked, bad))
}
