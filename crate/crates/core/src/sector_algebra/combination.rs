use std::collections::btree_map;
use std::collections::BTreeMap;
use std::ops::AddAssign;

use super::SlitSet;

/// A formal integer linear combination of slit projectors `Σ c_I P_I`.
///
/// Zero coefficients are never stored, so two combinations are equal exactly
/// when they are equal as formal sums.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedSubsetCombination {
    terms: BTreeMap<SlitSet, i64>,
}

impl SignedSubsetCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, set: SlitSet, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(set) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, set: &SlitSet) -> i64 {
        self.terms.get(set).copied().unwrap_or(0)
    }

    pub fn scaled(&self, factor: i64) -> Self {
        let mut out = Self::new();
        for (set, &c) in &self.terms {
            out.add_term(set.clone(), c * factor);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SlitSet, i64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }
}

impl AddAssign<&SignedSubsetCombination> for SignedSubsetCombination {
    fn add_assign(&mut self, rhs: &SignedSubsetCombination) {
        for (set, c) in rhs.iter() {
            self.add_term(set.clone(), c);
        }
    }
}

impl FromIterator<(SlitSet, i64)> for SignedSubsetCombination {
    fn from_iter<T: IntoIterator<Item = (SlitSet, i64)>>(iter: T) -> Self {
        let mut out = Self::new();
        for (set, c) in iter {
            out.add_term(set, c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(m: &[usize]) -> SlitSet {
        SlitSet::new(4, m.iter().copied()).unwrap()
    }

    #[test]
    fn cancelling_terms_disappear() {
        let mut a = SignedSubsetCombination::new();
        a.add_term(set(&[0]), 2);
        a.add_term(set(&[0]), -2);
        a.add_term(set(&[1]), 0);
        assert!(a.is_empty());
    }

    #[test]
    fn addition_and_scaling_are_coefficientwise() {
        let a: SignedSubsetCombination = [(set(&[0]), 1), (set(&[0, 1]), -1)].into_iter().collect();
        let mut b = a.scaled(3);
        b += &a.scaled(-3);
        assert!(b.is_empty());
        let mut c = a.clone();
        c += &a;
        assert_eq!(c.coeff(&set(&[0, 1])), -2);
    }
}
