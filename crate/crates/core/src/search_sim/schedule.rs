use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, invalid, Error, Result};
use crate::theory_models::{
    grover_diffusion, random_reversible, LinearMap, Model, ModelKind, StateVector,
};

/// Named way of producing the reversible steps `G_1, …, G_K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Lifted Grover diffusion; quantum models only.
    Grover,
    /// Reflection about the uniform state in sector coordinates.
    Reflect,
    /// Independent Haar-random orthogonal maps per step.
    Random,
}

impl Strategy {
    /// `grover` for quantum models, `reflect` otherwise.
    pub fn default_for(kind: ModelKind) -> Strategy {
        match kind {
            ModelKind::Quantum => Strategy::Grover,
            _ => Strategy::Reflect,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Grover => "grover",
            Strategy::Reflect => "reflect",
            Strategy::Random => "random",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grover" => Ok(Strategy::Grover),
            "reflect" => Ok(Strategy::Reflect),
            "random" => Ok(Strategy::Random),
            other => invalid(format!("unknown strategy '{other}'")),
        }
    }
}

/// Where a schedule came from; recorded in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "lowercase")]
pub enum Provenance {
    Grover,
    Reflect,
    Random { seed: u64 },
    Custom { label: String },
}

impl Provenance {
    pub fn seed(&self) -> Option<u64> {
        match self {
            Provenance::Random { seed } => Some(*seed),
            _ => None,
        }
    }

    pub fn strategy_name(&self) -> &str {
        match self {
            Provenance::Grover => "grover",
            Provenance::Reflect => "reflect",
            Provenance::Random { .. } => "random",
            Provenance::Custom { label } => label,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Random { seed } => write!(f, "random:{seed}"),
            Provenance::Custom { label } => write!(f, "custom:{label}"),
            other => f.write_str(other.strategy_name()),
        }
    }
}

/// The reversible steps applied between oracle queries.
#[derive(Debug, Clone)]
pub struct Schedule {
    steps: Vec<LinearMap>,
    provenance: Provenance,
}

impl Schedule {
    /// Rejects any step whose orthogonality defect reaches `tol`.
    pub fn new(steps: Vec<LinearMap>, provenance: Provenance, tol: f64) -> Result<Self> {
        if let Some(first) = steps.first() {
            for s in &steps {
                check_dim(first.dim(), s.dim())?;
                let defect = s.orthogonality_defect();
                if defect.is_nan() || defect >= tol {
                    return Err(Error::NotReversible { defect, tol });
                }
            }
        }
        Ok(Schedule { steps, provenance })
    }

    pub fn steps(&self) -> &[LinearMap] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The first `k` steps.
    pub fn truncated(&self, k: usize) -> Schedule {
        Schedule {
            steps: self.steps[..k.min(self.steps.len())].to_vec(),
            provenance: self.provenance.clone(),
        }
    }
}

pub fn uniform_start(model: &Model) -> StateVector {
    model.uniform_state().clone()
}

/// `R = 2ssᵀ/⟨s,s⟩ − 𝟙` in sector coordinates.
pub fn reflection_about(model: &Model, s: &StateVector) -> Result<LinearMap> {
    check_dim(model.dim(), s.dim())?;
    let n = s.norm();
    if n == 0.0 {
        return invalid("cannot reflect about the zero vector");
    }
    Ok(LinearMap::Reflection(s.coords() / n))
}

/// `⌈4√N⌉`.
pub fn default_k_max(n: usize) -> usize {
    (4.0 * (n as f64).sqrt()).ceil() as usize
}

/// Per-step seed for random schedules (splitmix64 of the run seed and step).
pub fn step_seed(seed: u64, step: usize) -> u64 {
    let mut z = seed ^ (step as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn build_schedule(
    model: &Model,
    strategy: Strategy,
    seed: u64,
    k: usize,
    tol: f64,
) -> Result<Schedule> {
    match strategy {
        Strategy::Grover => {
            if model.kind() != ModelKind::Quantum {
                return invalid(format!(
                    "the grover strategy needs a quantum model, got {}",
                    model.kind()
                ));
            }
            let d = grover_diffusion(model)?;
            Schedule::new(vec![d; k], Provenance::Grover, tol)
        }
        Strategy::Reflect => {
            let r = reflection_about(model, model.uniform_state())?;
            Schedule::new(vec![r; k], Provenance::Reflect, tol)
        }
        Strategy::Random => {
            let steps = (0..k)
                .map(|i| random_reversible(model, step_seed(seed, i)))
                .collect();
            Schedule::new(steps, Provenance::Random { seed }, tol)
        }
    }
}
