use std::sync::Arc;

use nalgebra::DVector;

use super::SectorSpace;
use crate::error::{check_dim, Error, Result};
use crate::sector_algebra::SlitSet;

/// A real coordinate vector on a [`SectorSpace`].
#[derive(Debug, Clone)]
pub struct StateVector {
    space: Arc<SectorSpace>,
    coords: DVector<f64>,
}

impl StateVector {
    pub fn new(space: Arc<SectorSpace>, coords: DVector<f64>) -> Result<Self> {
        check_dim(space.total_dim(), coords.len())?;
        Ok(StateVector { space, coords })
    }

    pub fn zeros(space: Arc<SectorSpace>) -> Self {
        let coords = DVector::zeros(space.total_dim());
        StateVector { space, coords }
    }

    pub fn space(&self) -> &Arc<SectorSpace> {
        &self.space
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn into_coords(self) -> DVector<f64> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `s_I = ω_I s` as the raw coordinate block of sector `I`.
    pub fn sector_component(&self, set: &SlitSet) -> Result<DVector<f64>> {
        let r = self.space.block(set)?;
        Ok(self.coords.rows(r.start, r.len()).into_owned())
    }

    pub fn with_coords(&self, coords: DVector<f64>) -> Result<Self> {
        Self::new(self.space.clone(), coords)
    }

    fn same_space(&self, other: &StateVector) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) {
            return Ok(());
        }
        check_dim(self.dim(), other.dim())?;
        if self.space.n() != other.space.n() || self.space.h() != other.space.h() {
            return Err(Error::InvalidParameters(
                "states live on different sector spaces".into(),
            ));
        }
        Ok(())
    }

    pub fn inner(&self, other: &StateVector) -> Result<f64> {
        self.same_space(other)?;
        Ok(self.coords.dot(&other.coords))
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }

    pub fn distance_squared(&self, other: &StateVector) -> Result<f64> {
        self.same_space(other)?;
        Ok(self
            .coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum())
    }
}

/// Self-dual inner product: the Euclidean dot product in sector coordinates.
pub fn inner(s: &StateVector, t: &StateVector) -> Result<f64> {
    s.inner(t)
}

pub fn norm(s: &StateVector) -> f64 {
    s.norm()
}
