use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A subset of the slits `{0, …, N−1}`.
///
/// Members are kept sorted and unique. The total order is size first, then
/// lexicographic on the members, which is also the canonical sector layout.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlitSet {
    members: Vec<usize>,
    universe: usize,
}

impl SlitSet {
    pub fn new<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        if universe == 0 {
            return invalid("universe size must be positive");
        }
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(&m) = members.iter().find(|&&m| m >= universe) {
            return invalid(format!("slit {m} outside universe of size {universe}"));
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return invalid("duplicate slit index");
        }
        Ok(SlitSet { members, universe })
    }

    /// Builds from members already known to be sorted, unique and in range.
    pub(crate) fn from_sorted_unchecked(universe: usize, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|&m| m < universe));
        SlitSet { members, universe }
    }

    pub fn empty(universe: usize) -> Result<Self> {
        Self::new(universe, [])
    }

    pub fn singleton(universe: usize, slit: usize) -> Result<Self> {
        Self::new(universe, [slit])
    }

    pub fn full(universe: usize) -> Result<Self> {
        Self::new(universe, 0..universe)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, slit: usize) -> bool {
        self.members.binary_search(&slit).is_ok()
    }

    pub fn is_subset(&self, other: &SlitSet) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &SlitSet) -> SlitSet {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        SlitSet::from_sorted_unchecked(self.universe, members)
    }

    /// All subsets of `self`, including the empty set and `self`.
    ///
    /// Enumerated by bitmask over the members, so `len()` must stay below 64.
    pub fn subsets(&self) -> impl Iterator<Item = SlitSet> + '_ {
        assert!(self.len() < 64, "subset enumeration limited to 63 members");
        (0u64..(1u64 << self.len())).map(move |mask| self.sub_by_mask(mask))
    }

    /// Subset selected by a bitmask over the positions of `members`.
    pub(crate) fn sub_by_mask(&self, mask: u64) -> SlitSet {
        let members = self
            .members
            .iter()
            .enumerate()
            .filter(|(pos, _)| mask >> pos & 1 == 1)
            .map(|(_, &m)| m)
            .collect();
        SlitSet::from_sorted_unchecked(self.universe, members)
    }
}

impl Ord for SlitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
            .then_with(|| self.universe.cmp(&other.universe))
    }
}

impl PartialOrd for SlitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SlitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_members() {
        let s = SlitSet::new(5, [3, 0, 2]).unwrap();
        assert_eq!(s.members(), &[0, 2, 3]);
        assert_eq!(s.to_string(), "{0,2,3}");
    }

    #[test]
    fn rejects_out_of_range_and_duplicates() {
        assert!(SlitSet::new(3, [3]).is_err());
        assert!(SlitSet::new(3, [1, 1]).is_err());
        assert!(SlitSet::new(0, []).is_err());
    }

    #[test]
    fn order_is_size_then_lex() {
        let a = SlitSet::new(4, [3]).unwrap();
        let b = SlitSet::new(4, [0, 1]).unwrap();
        let c = SlitSet::new(4, [0, 2]).unwrap();
        assert!(a < b && b < c);
    }

    #[test]
    fn subsets_and_intersection() {
        let s = SlitSet::new(6, [1, 4, 5]).unwrap();
        assert_eq!(s.subsets().count(), 8);
        let t = SlitSet::new(6, [0, 4, 5]).unwrap();
        assert_eq!(s.intersection(&t).members(), &[4, 5]);
        assert!(s.intersection(&t).is_subset(&s));
    }
}
