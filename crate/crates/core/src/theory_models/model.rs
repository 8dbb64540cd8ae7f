use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::orthogonal::HouseholderProduct;
use super::quantum::{self, Conjugation, C64};
use super::{build_sector_space, LinearMap, SectorSpace, StateVector};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Classical,
    Quantum,
    Synthetic,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Classical => "classical",
            ModelKind::Quantum => "quantum",
            ModelKind::Synthetic => "synthetic",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(ModelKind::Classical),
            "quantum" => Ok(ModelKind::Quantum),
            "synthetic" => Ok(ModelKind::Synthetic),
            other => invalid(format!("unknown model kind '{other}'")),
        }
    }
}

/// Everything needed to rebuild a model; embedded in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub kind: ModelKind,
    pub n: usize,
    pub h: usize,
    pub dims_per_size: BTreeMap<usize, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A concrete sector model with its distinguished states.
///
/// Every basis state `a^i` is the unit vector on the first coordinate of the
/// singleton sector `{i}`; it is produced on demand by [`Model::basis_state`]
/// because the quantum model at `N = 1024` has a million coordinates.
#[derive(Debug, Clone)]
pub struct Model {
    kind: ModelKind,
    space: Arc<SectorSpace>,
    uniform: StateVector,
    descriptor: ModelDescriptor,
}

fn unit_dims(h: usize) -> BTreeMap<usize, usize> {
    (1..=h).map(|k| (k, 1)).collect()
}

pub fn classical_model(n: usize) -> Result<Model> {
    if n == 0 {
        return invalid("classical model needs N ≥ 1");
    }
    let dims = unit_dims(1);
    let space = Arc::new(build_sector_space(n, 1, &dims)?);
    let uniform = StateVector::new(space.clone(), DVector::from_element(n, 1.0 / n as f64))?;
    Ok(Model {
        kind: ModelKind::Classical,
        space,
        uniform,
        descriptor: ModelDescriptor {
            kind: ModelKind::Classical,
            n,
            h: 1,
            dims_per_size: dims,
            seed: None,
        },
    })
}

pub fn quantum_model(n: usize) -> Result<Model> {
    if n < 2 {
        return invalid("quantum model needs N ≥ 2");
    }
    let dims: BTreeMap<usize, usize> = [(1, 1), (2, 2)].into_iter().collect();
    let space = Arc::new(build_sector_space(n, 2, &dims)?);
    debug_assert_eq!(space.total_dim(), quantum::embedded_dim(n));
    // all density-matrix entries equal to 1/N
    let mut coords = DVector::zeros(space.total_dim());
    let inv = 1.0 / n as f64;
    for i in 0..n {
        coords[i] = inv;
    }
    for c in (n..coords.len()).step_by(2) {
        coords[c] = std::f64::consts::SQRT_2 * inv;
    }
    let uniform = StateVector::new(space.clone(), coords)?;
    Ok(Model {
        kind: ModelKind::Quantum,
        space,
        uniform,
        descriptor: ModelDescriptor {
            kind: ModelKind::Quantum,
            n,
            h: 2,
            dims_per_size: dims,
            seed: None,
        },
    })
}

pub fn synthetic_model(n: usize, h: usize) -> Result<Model> {
    synthetic_model_with_dims(n, h, &unit_dims(h))
}

/// Order-`h` carrier with configurable sector dimensions.
///
/// The uniform state puts `1/N` on each singleton and a common value `β` on
/// every higher-sector coordinate, with `β` fixed by `‖u‖ = 1`.
pub fn synthetic_model_with_dims(
    n: usize,
    h: usize,
    dims: &BTreeMap<usize, usize>,
) -> Result<Model> {
    let space = Arc::new(build_sector_space(n, h, dims)?);
    let mut coords = DVector::zeros(space.total_dim());
    let inv = 1.0 / n as f64;
    for x in 0..n {
        coords[space.singleton_offset(x)?] = inv;
    }
    let higher_start = n * dims[&1];
    let higher = space.total_dim() - higher_start;
    if higher > 0 {
        let beta = ((1.0 - inv) / higher as f64).sqrt();
        for c in higher_start..space.total_dim() {
            coords[c] = beta;
        }
    }
    let uniform = StateVector::new(space.clone(), coords)?;
    let dims_per_size = space.dims_per_size().clone();
    Ok(Model {
        kind: ModelKind::Synthetic,
        space,
        uniform,
        descriptor: ModelDescriptor {
            kind: ModelKind::Synthetic,
            n,
            h,
            dims_per_size,
            seed: None,
        },
    })
}

impl Model {
    pub fn from_descriptor(d: &ModelDescriptor) -> Result<Model> {
        let mut m = match d.kind {
            ModelKind::Classical => classical_model(d.n)?,
            ModelKind::Quantum => quantum_model(d.n)?,
            ModelKind::Synthetic => synthetic_model_with_dims(d.n, d.h, &d.dims_per_size)?,
        };
        if m.descriptor.h != d.h {
            return invalid(format!(
                "{} model has h = {}, descriptor says {}",
                d.kind, m.descriptor.h, d.h
            ));
        }
        m.descriptor.seed = d.seed;
        Ok(m)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn h(&self) -> usize {
        self.space.h()
    }

    pub fn space(&self) -> &Arc<SectorSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.total_dim()
    }

    pub fn descriptor(&self) -> &ModelDescriptor {
        &self.descriptor
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.descriptor.seed = seed;
        self
    }

    pub fn uniform_state(&self) -> &StateVector {
        &self.uniform
    }

    pub fn basis_state(&self, i: usize) -> Result<StateVector> {
        let mut coords = DVector::zeros(self.dim());
        coords[self.space.singleton_offset(i)?] = 1.0;
        StateVector::new(self.space.clone(), coords)
    }

    pub fn state(&self, coords: DVector<f64>) -> Result<StateVector> {
        StateVector::new(self.space.clone(), coords)
    }

    /// Embeds an `N×N` density matrix; quantum models only.
    pub fn embed_density(&self, rho: &DMatrix<C64>) -> Result<StateVector> {
        self.require_quantum()?;
        if rho.nrows() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: rho.nrows(),
            });
        }
        self.state(quantum::embed(rho)?)
    }

    pub(crate) fn require_quantum(&self) -> Result<()> {
        if self.kind != ModelKind::Quantum {
            return invalid(format!(
                "operation needs a quantum model, got {}",
                self.kind
            ));
        }
        Ok(())
    }
}

/// `ρ ↦ UρU†` in sector coordinates of a quantum model.
pub fn lift_unitary_conjugation(model: &Model, u: &DMatrix<C64>, tol: f64) -> Result<LinearMap> {
    model.require_quantum()?;
    if u.nrows() != model.n() || u.ncols() != model.n() {
        return Err(Error::DimensionMismatch {
            expected: model.n(),
            found: u.nrows(),
        });
    }
    let defect = quantum::unitarity_defect(u);
    if defect.is_nan() || defect >= tol {
        return Err(Error::NonUnitary(defect));
    }
    Ok(LinearMap::Conjugation(Conjugation::dense(u.clone())?))
}

/// Lifted Grover diffusion `D = 2|u⟩⟨u| − 𝟙` about the uniform amplitude
/// vector, kept in the `O(N²)` rank-one form.
pub fn grover_diffusion(model: &Model) -> Result<LinearMap> {
    model.require_quantum()?;
    let n = model.n();
    let amp = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    Ok(LinearMap::Conjugation(Conjugation::reflection(
        &DVector::from_element(n, amp),
    )?))
}

/// Seeded Haar-random orthogonal map on the model's sector coordinates.
pub fn random_reversible(model: &Model, seed: u64) -> LinearMap {
    LinearMap::Householder(HouseholderProduct::random(model.dim(), seed))
}
