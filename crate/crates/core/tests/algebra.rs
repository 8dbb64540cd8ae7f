use interference_core::sector_algebra::{
    binomial, coeff_c, coherence_coeffs, expand_coherence_sum, expand_slit_projector,
    identity_decomposition_coeffs, pairing_count_bruteforce, pairing_count_closed,
    SignedSubsetCombination, SlitSet,
};
use proptest::prelude::*;

fn set_from_mask(n: usize, mask: u32) -> SlitSet {
    SlitSet::new(n, (0..n).filter(|i| mask >> i & 1 == 1)).unwrap()
}

/// `(N, I, J, K)` with `K ⊆ I ∩ J`, all inside `{0..N−1}`.
fn triple() -> impl Strategy<Value = (usize, u32, u32, u32)> {
    (1usize..=8).prop_flat_map(|n| {
        let full = (1u32 << n) - 1;
        (Just(n), 0..=full, 0..=full, 0..=full).prop_map(|(n, i, j, k)| (n, i, j, k & i & j))
    })
}

proptest! {
    #[test]
    fn pairing_closed_form_matches_bruteforce((n, i, j, k) in triple()) {
        let (i, j, k) = (set_from_mask(n, i), set_from_mask(n, j), set_from_mask(n, k));
        prop_assert_eq!(
            pairing_count_bruteforce(&i, &j, &k).unwrap(),
            pairing_count_closed(&i, &j, &k).unwrap()
        );
    }

    #[test]
    fn slit_projector_is_sum_of_its_coherences(n in 1usize..=9, mask in 1u32..512) {
        let mask = mask & ((1 << n) - 1);
        prop_assume!(mask != 0);
        let set = set_from_mask(n, mask);
        let expanded = expand_slit_projector(&set).unwrap();
        let expected: SignedSubsetCombination = [(set, 1)].into_iter().collect();
        prop_assert_eq!(expanded, expected);
    }

    #[test]
    fn coherence_sum_is_identity_decomposition((n, h) in (1usize..=9).prop_flat_map(|n| (Just(n), 1..=n))) {
        prop_assert_eq!(expand_coherence_sum(h, n).unwrap(), identity_decomposition_coeffs(h, n).unwrap());
    }

    #[test]
    fn coherence_coefficients_alternate(n in 1usize..=8, mask in 1u32..256) {
        let mask = mask & ((1 << n) - 1);
        prop_assume!(mask != 0);
        let set = set_from_mask(n, mask);
        let c = coherence_coeffs(&set).unwrap();
        for (sub, v) in c.iter() {
            prop_assert!(sub.is_subset(&set));
            let sign = if (set.len() - sub.len()).is_multiple_of(2) { 1 } else { -1 };
            prop_assert_eq!(v, sign);
        }
        prop_assert_eq!(c.len(), (1usize << set.len()) - 1);
    }

    #[test]
    fn full_order_decomposition_is_full_set(n in 1usize..=10) {
        // C(N, k, N) = δ_kN: at h = N only the full projector survives
        for k in 1..=n {
            prop_assert_eq!(coeff_c(n, k, n).unwrap(), i64::from(k == n));
        }
    }
}

#[test]
fn coefficient_table_examples() {
    assert_eq!(coeff_c(1, 1, 3).unwrap(), 1);
    assert_eq!(coeff_c(2, 1, 3).unwrap(), -1);
    assert_eq!(coeff_c(2, 2, 3).unwrap(), 1);
    assert_eq!(coeff_c(2, 1, 4).unwrap(), -2);
    assert_eq!(binomial(-1, 0).unwrap(), 1);
    assert_eq!(binomial(2, 3).unwrap(), 0);
}

#[test]
fn exhaustive_pairing_grid_n6() {
    let n = 6;
    let mut checked = 0;
    for i in 0u32..64 {
        for j in 0u32..64 {
            let common = i & j;
            let mut k = common;
            loop {
                let (si, sj, sk) = (
                    set_from_mask(n, i),
                    set_from_mask(n, j),
                    set_from_mask(n, k),
                );
                assert_eq!(
                    pairing_count_bruteforce(&si, &sj, &sk).unwrap(),
                    pairing_count_closed(&si, &sj, &sk).unwrap()
                );
                checked += 1;
                if k == 0 {
                    break;
                }
                k = (k - 1) & common;
            }
        }
    }
    // Σ_{I,J} 2^{|I∩J|} = 5^N
    assert_eq!(checked, 5usize.pow(6));
}
