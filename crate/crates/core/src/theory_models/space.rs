use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use crate::error::{invalid, Error, Result};
use crate::sector_algebra::{enumerate_sectors, SlitSet};

/// Flat coordinate layout of a sector-decomposed state space.
///
/// Sector `I` (nonempty, `|I| ≤ h`) owns the contiguous block
/// `offsets[I] .. offsets[I] + dims[I]`; blocks follow the canonical sector
/// order and tile `[0, total_dim)` exactly.
#[derive(Debug, Clone)]
pub struct SectorSpace {
    n: usize,
    h: usize,
    dims_per_size: BTreeMap<usize, usize>,
    sectors: Vec<SlitSet>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    index: HashMap<SlitSet, usize>,
    total_dim: usize,
}

/// Builds the layout with `m_I = dims_per_size[|I|]`.
pub fn build_sector_space(
    n: usize,
    h: usize,
    dims_per_size: &BTreeMap<usize, usize>,
) -> Result<SectorSpace> {
    for size in 1..=h {
        match dims_per_size.get(&size) {
            None => return invalid(format!("missing dimension for sectors of size {size}")),
            Some(0) => return invalid(format!("dimension for sectors of size {size} must be ≥ 1")),
            Some(_) => {}
        }
    }
    let sectors = enumerate_sectors(n, h)?;
    let mut dims = Vec::with_capacity(sectors.len());
    let mut offsets = Vec::with_capacity(sectors.len());
    let mut total = 0usize;
    for s in &sectors {
        let d = dims_per_size[&s.len()];
        offsets.push(total);
        dims.push(d);
        total = total
            .checked_add(d)
            .ok_or_else(|| Error::ResourceLimit("total dimension overflows".into()))?;
    }
    let index = sectors
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let dims_per_size = dims_per_size.range(1..=h).map(|(&k, &v)| (k, v)).collect();
    Ok(SectorSpace {
        n,
        h,
        dims_per_size,
        sectors,
        dims,
        offsets,
        index,
        total_dim: total,
    })
}

impl SectorSpace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn dims_per_size(&self) -> &BTreeMap<usize, usize> {
        &self.dims_per_size
    }

    pub fn sectors(&self) -> &[SlitSet] {
        &self.sectors
    }

    pub fn num_sectors(&self) -> usize {
        self.sectors.len()
    }

    pub fn sector_index(&self, set: &SlitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Coordinate block of the `idx`-th sector in canonical order.
    pub fn block_at(&self, idx: usize) -> Range<usize> {
        self.offsets[idx]..self.offsets[idx] + self.dims[idx]
    }

    pub fn block(&self, set: &SlitSet) -> Result<Range<usize>> {
        self.sector_index(set)
            .map(|i| self.block_at(i))
            .ok_or_else(|| Error::UnknownSector(set.to_string()))
    }

    pub fn dim_of(&self, set: &SlitSet) -> Result<usize> {
        self.block(set).map(|r| r.len())
    }

    /// First coordinate of the singleton sector `{x}`, where the basis state
    /// `a^x` lives in every model built here.
    pub fn singleton_offset(&self, x: usize) -> Result<usize> {
        if x >= self.n {
            return invalid(format!("slit {x} out of range for N = {}", self.n));
        }
        // singletons come first and each occupies dims_per_size[1] coordinates
        Ok(x * self.dims_per_size[&1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn total_dimensions() {
        assert_eq!(
            build_sector_space(3, 2, &dims(&[(1, 1), (2, 2)]))
                .unwrap()
                .total_dim(),
            9
        );
        assert_eq!(
            build_sector_space(4, 1, &dims(&[(1, 1)]))
                .unwrap()
                .total_dim(),
            4
        );
        assert_eq!(
            build_sector_space(4, 3, &dims(&[(1, 1), (2, 1), (3, 1)]))
                .unwrap()
                .total_dim(),
            14
        );
    }

    #[test]
    fn offsets_tile_the_space() {
        let sp = build_sector_space(5, 3, &dims(&[(1, 2), (2, 3), (3, 1)])).unwrap();
        let mut next = 0;
        for i in 0..sp.num_sectors() {
            let r = sp.block_at(i);
            assert_eq!(r.start, next);
            next = r.end;
        }
        assert_eq!(next, sp.total_dim());
        assert_eq!(sp.singleton_offset(3).unwrap(), 6);
    }

    #[test]
    fn missing_or_zero_dimensions() {
        assert!(build_sector_space(3, 2, &dims(&[(1, 1)])).is_err());
        assert!(build_sector_space(3, 2, &dims(&[(1, 1), (2, 0)])).is_err());
        assert!(build_sector_space(3, 4, &dims(&[(1, 1)])).is_err());
    }

    #[test]
    fn unknown_sector() {
        let sp = build_sector_space(4, 2, &dims(&[(1, 1), (2, 1)])).unwrap();
        let triple = SlitSet::new(4, [0, 1, 2]).unwrap();
        assert!(matches!(sp.block(&triple), Err(Error::UnknownSector(_))));
    }
}
