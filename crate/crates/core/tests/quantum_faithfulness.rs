//! The quantum model against direct density-matrix arithmetic.

use approx::assert_abs_diff_eq;
use nalgebra::{Complex, DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use interference_core::search_sim::reflection_about;
use interference_core::sector_algebra::SlitSet;
use interference_core::theory_models::quantum::{
    embed, embed_pure, embedded_dim, lift_conjugation_dense, unembed,
};
use interference_core::theory_models::{
    grover_diffusion, lift_unitary_conjugation, quantum_model, sign_flip_oracle, slit_projector,
};

type C64 = Complex<f64>;

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |_, _| {
        C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    })
}

fn random_density(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<C64> {
    let a = gaussian(rng, n);
    let rho = &a * a.adjoint();
    let tr = rho.trace();
    rho / tr
}

fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<C64> {
    gaussian(rng, n).qr().q()
}

fn coordinate_projector(n: usize, set: &SlitSet) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |i, j| {
        if i == j && set.contains(i) {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

#[test]
fn slit_projectors_act_as_compressions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [3usize, 4, 5] {
        let q = quantum_model(n).unwrap();
        let sets: Vec<SlitSet> = SlitSet::full(n)
            .unwrap()
            .subsets()
            .filter(|s| !s.is_empty())
            .collect();
        for _ in 0..50 {
            let rho = random_density(&mut rng, n);
            let v = embed(&rho).unwrap();
            for s in &sets {
                let p = coordinate_projector(n, s);
                let want = embed(&(&p * &rho * &p)).unwrap();
                let got = slit_projector(&q, s).unwrap().apply(&v).unwrap();
                assert_abs_diff_eq!((got - want).amax(), 0.0, epsilon = 1e-12);
            }
        }
    }
}

#[test]
fn lifted_conjugation_matches_density_evolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [2usize, 3, 5] {
        let q = quantum_model(n).unwrap();
        for _ in 0..50 {
            let u = random_unitary(&mut rng, n);
            let rho = random_density(&mut rng, n);
            let map = lift_unitary_conjugation(&q, &u, 1e-9).unwrap();
            assert!(map.is_orthogonal(1e-10));
            let got = map.apply(&embed(&rho).unwrap()).unwrap();
            let want = embed(&(&u * &rho * u.adjoint())).unwrap();
            assert_abs_diff_eq!((got - want).amax(), 0.0, epsilon = 1e-12);
        }
    }
}

#[test]
fn embedding_preserves_hilbert_schmidt_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let rho = random_density(&mut rng, 4);
        let hs: f64 = rho.iter().map(|z| z.norm_sqr()).sum();
        assert_abs_diff_eq!(embed(&rho).unwrap().norm_squared(), hs, epsilon = 1e-12);
    }
}

#[test]
fn sign_flip_oracle_is_phase_conjugation() {
    for n in 2..=8 {
        let q = quantum_model(n).unwrap();
        for x in 0..n {
            let mut z = DMatrix::<C64>::identity(n, n);
            z[(x, x)] = C64::new(-1.0, 0.0);
            let lifted = lift_unitary_conjugation(&q, &z, 1e-12).unwrap();
            let oracle = sign_flip_oracle(&q, x).unwrap();
            assert!(oracle.map.max_abs_diff(&lifted).unwrap() < 1e-10);
        }
    }
}

#[test]
fn non_unitary_maps_are_rejected() {
    let q = quantum_model(3).unwrap();
    let mut k = DMatrix::<C64>::identity(3, 3);
    k[(0, 1)] = C64::new(0.5, 0.0);
    assert!(lift_unitary_conjugation(&q, &k, 1e-9).is_err());
}

#[test]
fn triple_coherence_vanishes_for_true_projector_conjugations() {
    // ω_{012} = Σ_{J ⊆ {0,1,2}} (−1)^{3−|J|} (ρ ↦ Π_J ρ Π_J) with Π_∅ = 0
    let n = 3;
    let full = SlitSet::full(n).unwrap();
    let mut omega = DMatrix::<f64>::zeros(embedded_dim(n), embedded_dim(n));
    for j in full.subsets().filter(|s| !s.is_empty()) {
        let lifted = lift_conjugation_dense(&coordinate_projector(n, &j)).unwrap();
        let sign = if (3 - j.len()) % 2 == 0 { 1.0 } else { -1.0 };
        omega += lifted * sign;
    }
    assert_abs_diff_eq!(omega.amax(), 0.0, epsilon = 1e-14);

    // a pair coherence does not vanish
    let pair = SlitSet::new(n, [0, 1]).unwrap();
    let mut w = DMatrix::<f64>::zeros(9, 9);
    for j in pair.subsets().filter(|s| !s.is_empty()) {
        let sign = if (2 - j.len()) % 2 == 0 { 1.0 } else { -1.0 };
        w += lift_conjugation_dense(&coordinate_projector(n, &j)).unwrap() * sign;
    }
    assert!(w.amax() > 0.5);
}

#[test]
fn grover_diffusion_matches_density_evolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in [2usize, 3, 7, 16] {
        let q = quantum_model(n).unwrap();
        let g = grover_diffusion(&q).unwrap();
        let d = DMatrix::from_fn(n, n, |i, j| {
            C64::new(2.0 / n as f64 - if i == j { 1.0 } else { 0.0 }, 0.0)
        });
        for _ in 0..5 {
            let rho = random_density(&mut rng, n);
            let got = g.apply(&embed(&rho).unwrap()).unwrap();
            let want = embed(&(&d * &rho * &d)).unwrap();
            assert_abs_diff_eq!((got - want).amax(), 0.0, epsilon = 1e-12);
        }
    }
}

#[test]
fn sector_reflection_is_not_the_lifted_diffusion() {
    let q = quantum_model(3).unwrap();
    let r = reflection_about(&q, q.uniform_state()).unwrap();
    let g = grover_diffusion(&q).unwrap();
    assert!(r.max_abs_diff(&g).unwrap() > 0.1);
    // it maps |0⟩⟨0| to (2/3)|u⟩⟨u| − |0⟩⟨0|, which has trace −1/3
    let psi = DVector::from_vec(vec![
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
    ]);
    let out = r.apply(&embed_pure(&psi).unwrap()).unwrap();
    let trace = unembed(3, &out).unwrap().trace().re;
    assert_abs_diff_eq!(trace, -1.0 / 3.0, epsilon = 1e-12);
    let g_out = g.apply(&embed_pure(&psi).unwrap()).unwrap();
    assert_abs_diff_eq!(unembed(3, &g_out).unwrap().trace().re, 1.0, epsilon = 1e-12);
}
