//! Concrete models of the sector decomposition.
//!
//! Coordinates are orthonormal for the self-dual inner product, so every
//! coherence projector `ω_I` is a coordinate-block indicator and every slit
//! projector `P_I` is a sum of such blocks. Reversible maps are orthogonal
//! matrices on these coordinates.

mod lemmas;
mod linear_map;
mod model;
mod oracle;
mod orthogonal;
mod projectors;
pub mod quantum;
mod space;
mod state;

pub use lemmas::{
    check_lemmas_with, corrupted_coherence_projectors, lemma_report, random_unit_vectors,
    verify_lemma1, verify_lemma2, LemmaReport, PYTHAGORAS_SAMPLES,
};
pub use linear_map::{LinearMap, MAX_DENSE_DIM};
pub use model::{
    classical_model, grover_diffusion, lift_unitary_conjugation, quantum_model, random_reversible,
    synthetic_model, synthetic_model_with_dims, Model, ModelDescriptor, ModelKind,
};
pub use oracle::{
    flipped_ranges, sign_flip_oracle, verify_oracle, Oracle, OracleCheckForm, OracleReport,
    SLIT_FORM_MAX_N,
};
pub use orthogonal::HouseholderProduct;
pub use projectors::{
    all_slit_sets, coherence_projector, coherence_projectors, detect_order_of_interference,
    identity_decomposition_residual, instantiate, slit_projector, MAX_SUBSET_UNIVERSE,
};
pub use space::{build_sector_space, SectorSpace};
pub use state::{inner, norm, StateVector};
