use nalgebra::{DMatrix, DVector};

use super::orthogonal::HouseholderProduct;
use super::quantum::Conjugation;
use super::StateVector;
use crate::error::{check_dim, Error, Result};

/// Largest dimension for which a map is ever materialized densely.
pub const MAX_DENSE_DIM: usize = 4096;

/// A linear map on sector coordinates.
///
/// Projectors and oracles are diagonal in sector coordinates; the other
/// variants keep large reversible maps in factored form so they can act on
/// spaces far too big for an explicit `M×M` matrix.
#[derive(Debug, Clone)]
pub enum LinearMap {
    Dense(DMatrix<f64>),
    Diagonal(DVector<f64>),
    /// `2aaᵀ − 𝟙` for a unit axis `a`.
    Reflection(DVector<f64>),
    /// `ρ ↦ UρU†` on the quantum embedding.
    Conjugation(Conjugation),
    Householder(HouseholderProduct),
}

impl LinearMap {
    pub fn identity(dim: usize) -> Self {
        LinearMap::Diagonal(DVector::from_element(dim, 1.0))
    }

    pub fn zero(dim: usize) -> Self {
        LinearMap::Diagonal(DVector::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        match self {
            LinearMap::Dense(m) => m.nrows(),
            LinearMap::Diagonal(d) => d.len(),
            LinearMap::Reflection(a) => a.len(),
            LinearMap::Conjugation(c) => c.dim(),
            LinearMap::Householder(h) => h.dim(),
        }
    }

    pub fn as_diagonal(&self) -> Option<&DVector<f64>> {
        match self {
            LinearMap::Diagonal(d) => Some(d),
            _ => None,
        }
    }

    pub fn apply(&self, v: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.dim(), v.len())?;
        match self {
            LinearMap::Dense(m) => Ok(m * v),
            LinearMap::Diagonal(d) => Ok(d.component_mul(v)),
            LinearMap::Reflection(a) => {
                let p = 2.0 * a.dot(v);
                Ok(a * p - v)
            }
            LinearMap::Conjugation(c) => c.apply(v),
            LinearMap::Householder(h) => h.apply(v),
        }
    }

    /// `out ← self·v` reusing `out`'s storage where the variant allows it.
    pub fn apply_into(&self, v: &DVector<f64>, out: &mut DVector<f64>) -> Result<()> {
        check_dim(self.dim(), v.len())?;
        check_dim(self.dim(), out.len())?;
        match self {
            LinearMap::Diagonal(d) => {
                for ((o, a), b) in out.iter_mut().zip(d.iter()).zip(v.iter()) {
                    *o = a * b;
                }
            }
            LinearMap::Reflection(a) => {
                let p = 2.0 * a.dot(v);
                for ((o, ai), vi) in out.iter_mut().zip(a.iter()).zip(v.iter()) {
                    *o = p * ai - vi;
                }
            }
            LinearMap::Conjugation(c) => c.apply_into(v, out)?,
            other => *out = other.apply(v)?,
        }
        Ok(())
    }

    pub fn apply_state(&self, s: &StateVector) -> Result<StateVector> {
        s.with_coords(self.apply(s.coords())?)
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        let m = self.dim();
        if m > MAX_DENSE_DIM {
            return Err(Error::ResourceLimit(format!(
                "refusing to materialize a {m}×{m} matrix (limit {MAX_DENSE_DIM})"
            )));
        }
        Ok(match self {
            LinearMap::Dense(d) => d.clone(),
            LinearMap::Diagonal(d) => DMatrix::from_diagonal(d),
            LinearMap::Reflection(a) => a * a.transpose() * 2.0 - DMatrix::identity(m, m),
            LinearMap::Conjugation(c) => c.to_dense()?,
            LinearMap::Householder(h) => h.to_dense(),
        })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        check_dim(self.dim(), other.dim())?;
        Ok(match (self, other) {
            (LinearMap::Diagonal(a), LinearMap::Diagonal(b)) => {
                LinearMap::Diagonal(a.component_mul(b))
            }
            (_, LinearMap::Diagonal(b)) => {
                let mut m = self.to_dense()?;
                for (c, &s) in b.iter().enumerate() {
                    m.column_mut(c).scale_mut(s);
                }
                LinearMap::Dense(m)
            }
            (LinearMap::Diagonal(a), _) => {
                let mut m = other.to_dense()?;
                for (r, &s) in a.iter().enumerate() {
                    m.row_mut(r).scale_mut(s);
                }
                LinearMap::Dense(m)
            }
            _ => LinearMap::Dense(self.to_dense()? * other.to_dense()?),
        })
    }

    pub fn scaled(&self, factor: f64) -> Result<LinearMap> {
        Ok(match self {
            LinearMap::Diagonal(d) => LinearMap::Diagonal(d * factor),
            _ => LinearMap::Dense(self.to_dense()? * factor),
        })
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        check_dim(self.dim(), other.dim())?;
        Ok(match (self, other) {
            (LinearMap::Diagonal(a), LinearMap::Diagonal(b)) => LinearMap::Diagonal(a + b),
            _ => LinearMap::Dense(self.to_dense()? + other.to_dense()?),
        })
    }

    /// `max_ij |self_ij − other_ij|`.
    pub fn max_abs_diff(&self, other: &LinearMap) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        if let (LinearMap::Diagonal(a), LinearMap::Diagonal(b)) = (self, other) {
            return Ok((a - b).amax());
        }
        Ok((self.to_dense()? - other.to_dense()?).amax())
    }

    /// `‖MᵀM − 𝟙‖_max`, or a structural equivalent for factored maps.
    pub fn orthogonality_defect(&self) -> f64 {
        match self {
            LinearMap::Dense(m) => {
                if !m.is_square() {
                    return f64::INFINITY;
                }
                let n = m.nrows();
                (m.transpose() * m - DMatrix::<f64>::identity(n, n)).amax()
            }
            LinearMap::Diagonal(d) => d.iter().map(|x| (x * x - 1.0).abs()).fold(0.0, f64::max),
            LinearMap::Reflection(a) => 4.0 * (a.norm_squared() - 1.0).abs(),
            LinearMap::Conjugation(c) => c.unitarity_defect(),
            LinearMap::Householder(h) => h.orthogonality_defect(),
        }
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_defect() < tol
    }
}
