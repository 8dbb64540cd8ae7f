use super::{SignedSubsetCombination, SlitSet};
use crate::error::{invalid, Error, Result};

/// Largest universe accepted by the exact coefficient routines.
pub const MAX_COEFF_UNIVERSE: usize = 30;

/// Largest number of sectors [`enumerate_sectors`] will materialize.
pub const MAX_SECTORS: u128 = 20_000_000;

fn check_order(n: usize, h: usize) -> Result<()> {
    if n == 0 {
        return invalid("N must be positive");
    }
    if h == 0 {
        return invalid("h must be at least 1");
    }
    if h > n {
        return invalid(format!("h exceeds N (h = {h}, N = {n})"));
    }
    Ok(())
}

/// `binom(n, k)` over `n ≥ −1`, with `binom(n, 0) = 1` for every `n`
/// (including `−1`) and `binom(n, k) = 0` for `0 ≤ n < k`.
pub fn binomial(n: i64, k: i64) -> Result<i64> {
    if k < 0 {
        return Ok(0);
    }
    if k == 0 {
        return Ok(1);
    }
    if n < 0 {
        return invalid(format!("binom({n}, {k}) outside supported range"));
    }
    if n < k {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    i64::try_from(acc).map_err(|_| Error::ResourceLimit(format!("binom({n}, {k}) overflows i64")))
}

fn sector_count(n: usize, h: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for k in 1..=h {
        c = c * (n - k + 1) as u128 / k as u128;
        total = total.saturating_add(c);
        if total > MAX_SECTORS {
            break;
        }
    }
    total
}

/// Every nonempty `I ⊆ {0..N−1}` with `|I| ≤ h`, ordered by size then
/// lexicographically.
pub fn enumerate_sectors(n: usize, h: usize) -> Result<Vec<SlitSet>> {
    check_order(n, h)?;
    let count = sector_count(n, h);
    if count > MAX_SECTORS {
        return Err(Error::ResourceLimit(format!(
            "N = {n}, h = {h} has more than {MAX_SECTORS} sectors"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    for size in 1..=h {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(SlitSet::from_sorted_unchecked(n, idx.clone()));
            // advance to the next combination in lexicographic order
            let mut pos = size;
            while pos > 0 && idx[pos - 1] == n - size + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for q in pos..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    Ok(out)
}

/// The overlap-correcting coefficient `C(h,k,N) = (−1)^{h−k} binom(N−k−1, h−k)`.
pub fn coeff_c(h: usize, k: usize, n: usize) -> Result<i64> {
    check_order(n, h)?;
    if k == 0 || k > h {
        return invalid(format!("sector size {k} must satisfy 1 ≤ k ≤ h = {h}"));
    }
    if n > MAX_COEFF_UNIVERSE {
        return Err(Error::ResourceLimit(format!(
            "N = {n} exceeds the exact-arithmetic bound {MAX_COEFF_UNIVERSE}"
        )));
    }
    let sign = if (h - k).is_multiple_of(2) { 1 } else { -1 };
    Ok(sign * binomial(n as i64 - k as i64 - 1, (h - k) as i64)?)
}

/// `{I ↦ C(h,|I|,N)}` over the nonempty `I` with `|I| ≤ h`; zero
/// coefficients are omitted.
pub fn identity_decomposition_coeffs(h: usize, n: usize) -> Result<SignedSubsetCombination> {
    check_order(n, h)?;
    let by_size: Vec<i64> = (1..=h).map(|k| coeff_c(h, k, n)).collect::<Result<_>>()?;
    let mut out = SignedSubsetCombination::new();
    for set in enumerate_sectors(n, h)? {
        let c = by_size[set.len() - 1];
        out.add_term(set, c);
    }
    Ok(out)
}

/// Formal inclusion-exclusion expansion of the coherence projector
/// `ω_I = Σ_{Ĩ⊆I} (−1)^{|I|+|Ĩ|} P_Ĩ`, with the `P_∅` term dropped.
pub fn coherence_coeffs(set: &SlitSet) -> Result<SignedSubsetCombination> {
    if set.is_empty() {
        return invalid("coherence projector of the empty set is undefined");
    }
    if set.len() > MAX_COEFF_UNIVERSE {
        return Err(Error::ResourceLimit(format!(
            "|I| = {} exceeds {MAX_COEFF_UNIVERSE}",
            set.len()
        )));
    }
    Ok(set
        .subsets()
        .filter(|sub| !sub.is_empty())
        .map(|sub| {
            let sign = if (set.len() + sub.len()).is_multiple_of(2) {
                1
            } else {
                -1
            };
            (sub, sign)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, m: &[usize]) -> SlitSet {
        SlitSet::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(-1, 0).unwrap(), 1);
        assert_eq!(binomial(0, 1).unwrap(), 0);
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(29, 14).unwrap(), 77_558_760);
    }

    #[test]
    fn sectors_small_cases() {
        let two = enumerate_sectors(2, 1).unwrap();
        assert_eq!(two, vec![set(2, &[0]), set(2, &[1])]);
        let three = enumerate_sectors(3, 2).unwrap();
        let expect: Vec<SlitSet> = [&[0][..], &[1], &[2], &[0, 1], &[0, 2], &[1, 2]]
            .iter()
            .map(|m| set(3, m))
            .collect();
        assert_eq!(three, expect);
    }

    #[test]
    fn sector_count_matches_binomial_sum() {
        // 5 + 10 + 10
        assert_eq!(enumerate_sectors(5, 3).unwrap().len(), 25);
        let sorted = {
            let mut v = enumerate_sectors(6, 4).unwrap();
            v.sort();
            v
        };
        assert_eq!(sorted, enumerate_sectors(6, 4).unwrap());
    }

    #[test]
    fn sector_parameter_errors() {
        assert!(enumerate_sectors(0, 1).is_err());
        assert!(enumerate_sectors(3, 0).is_err());
        let err = enumerate_sectors(3, 4).unwrap_err();
        assert!(err.to_string().contains("h exceeds N"));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coeff_c(2, 1, 3).unwrap(), -1);
        assert_eq!(coeff_c(2, 2, 3).unwrap(), 1);
        assert_eq!(coeff_c(3, 3, 3).unwrap(), 1);
        assert_eq!(coeff_c(3, 2, 3).unwrap(), 0);
        assert_eq!(coeff_c(2, 1, 4).unwrap(), -2);
    }

    #[test]
    fn coefficient_errors() {
        assert!(coeff_c(2, 0, 3).is_err());
        assert!(coeff_c(2, 3, 3).is_err());
        assert!(coeff_c(4, 1, 3).is_err());
        assert!(matches!(coeff_c(2, 1, 31), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn identity_decomposition_examples() {
        let full = identity_decomposition_coeffs(4, 4).unwrap();
        assert_eq!(full.len(), 1);
        assert_eq!(full.coeff(&set(4, &[0, 1, 2, 3])), 1);

        let three = identity_decomposition_coeffs(2, 3).unwrap();
        assert_eq!(three.len(), 6);
        assert_eq!(three.coeff(&set(3, &[0, 2])), 1);
        assert_eq!(three.coeff(&set(3, &[1])), -1);

        let classical = identity_decomposition_coeffs(1, 3).unwrap();
        assert_eq!(
            classical.iter().map(|(_, c)| c).collect::<Vec<_>>(),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn coherence_examples() {
        let one = coherence_coeffs(&set(3, &[0])).unwrap();
        assert_eq!(one.iter().collect::<Vec<_>>(), vec![(&set(3, &[0]), 1)]);

        let pair = coherence_coeffs(&set(3, &[0, 1])).unwrap();
        assert_eq!(pair.len(), 3);
        assert_eq!(pair.coeff(&set(3, &[0, 1])), 1);
        assert_eq!(pair.coeff(&set(3, &[0])), -1);
        assert_eq!(pair.coeff(&set(3, &[1])), -1);

        let triple = coherence_coeffs(&set(3, &[0, 1, 2])).unwrap();
        assert_eq!(triple.len(), 7);
        for (s, c) in triple.iter() {
            let expect = match s.len() {
                3 | 1 => 1,
                _ => -1,
            };
            assert_eq!(c, expect, "{s}");
        }
        assert!(coherence_coeffs(&SlitSet::empty(3).unwrap()).is_err());
    }
}
