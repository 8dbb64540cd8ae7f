//! Density-matrix embedding of the quantum model.
//!
//! An `N×N` Hermitian matrix `ρ` maps to the sector coordinates
//!
//! * singleton `{i}`: `ρ_ii`
//! * pair `{i<j}`: `(√2·Re ρ_ij, √2·Im ρ_ij)`
//!
//! laid out in canonical sector order. The `√2` makes the Euclidean inner
//! product equal to the Hilbert–Schmidt product `tr(ρσ)`.

use std::f64::consts::SQRT_2;

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{check_dim, invalid, Result};

pub type C64 = Complex<f64>;

/// Sector-space dimension `N + 2·binom(N,2) = N²`.
pub fn embedded_dim(n: usize) -> usize {
    n * n
}

/// Coordinate offset of the pair sector `{i, j}`, `i < j`.
pub fn pair_offset(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    let pair_index = i * n - i * (i + 1) / 2 + (j - i - 1);
    n + 2 * pair_index
}

pub fn embed(rho: &DMatrix<C64>) -> Result<DVector<f64>> {
    let n = rho.nrows();
    check_dim(n, rho.ncols())?;
    let mut out = DVector::zeros(embedded_dim(n));
    for i in 0..n {
        out[i] = rho[(i, i)].re;
    }
    let mut off = n;
    for i in 0..n {
        for j in i + 1..n {
            let z = rho[(i, j)];
            out[off] = SQRT_2 * z.re;
            out[off + 1] = SQRT_2 * z.im;
            off += 2;
        }
    }
    Ok(out)
}

pub fn unembed(n: usize, coords: &DVector<f64>) -> Result<DMatrix<C64>> {
    check_dim(embedded_dim(n), coords.len())?;
    let mut rho = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    for i in 0..n {
        rho[(i, i)] = C64::new(coords[i], 0.0);
    }
    let mut off = n;
    for i in 0..n {
        for j in i + 1..n {
            let z = C64::new(coords[off], coords[off + 1]) / SQRT_2;
            rho[(i, j)] = z;
            rho[(j, i)] = z.conj();
            off += 2;
        }
    }
    Ok(rho)
}

/// Embedding of the pure state `|ψ⟩⟨ψ|`.
pub fn embed_pure(psi: &DVector<C64>) -> Result<DVector<f64>> {
    embed(&(psi * psi.adjoint()))
}

pub fn unitarity_defect(u: &DMatrix<C64>) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let g = u.adjoint() * u;
    let mut worst = 0.0f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Real `N²×N²` matrix of `ρ ↦ KρK†` in sector coordinates, for any `K`.
pub fn lift_conjugation_dense(k: &DMatrix<C64>) -> Result<DMatrix<f64>> {
    if !k.is_square() {
        return invalid("conjugating matrix must be square");
    }
    let n = k.nrows();
    let m = embedded_dim(n);
    let mut out = DMatrix::zeros(m, m);
    let kd = k.adjoint();
    for col in 0..m {
        let mut e = DVector::zeros(m);
        e[col] = 1.0;
        let rho = unembed(n, &e)?;
        let img = embed(&(k * rho * &kd))?;
        out.set_column(col, &img);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum ConjugationKind {
    Dense(DMatrix<C64>),
    /// `2|φ⟩⟨φ| − 𝟙` with unit `φ`, stored as split real/imaginary parts.
    Reflection {
        re: Vec<f64>,
        im: Vec<f64>,
    },
}

/// The reversible map `ρ ↦ UρU†` acting on embedded coordinates.
#[derive(Debug, Clone)]
pub struct Conjugation {
    n: usize,
    kind: ConjugationKind,
}

impl Conjugation {
    pub fn dense(u: DMatrix<C64>) -> Result<Self> {
        if !u.is_square() || u.nrows() == 0 {
            return invalid("unitary must be a nonempty square matrix");
        }
        Ok(Conjugation {
            n: u.nrows(),
            kind: ConjugationKind::Dense(u),
        })
    }

    /// Conjugation by the reflection `2|φ⟩⟨φ| − 𝟙` about `φ/‖φ‖`.
    pub fn reflection(phi: &DVector<C64>) -> Result<Self> {
        let nrm = phi.norm();
        if phi.is_empty() || nrm == 0.0 {
            return invalid("reflection axis must be nonzero");
        }
        let re = phi.iter().map(|z| z.re / nrm).collect();
        let im = phi.iter().map(|z| z.im / nrm).collect();
        Ok(Conjugation {
            n: phi.len(),
            kind: ConjugationKind::Reflection { re, im },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        embedded_dim(self.n)
    }

    /// The underlying `N×N` unitary.
    pub fn unitary(&self) -> DMatrix<C64> {
        match &self.kind {
            ConjugationKind::Dense(u) => u.clone(),
            ConjugationKind::Reflection { re, im } => {
                let phi = DVector::from_iterator(
                    self.n,
                    re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)),
                );
                let mut d = (&phi * phi.adjoint()) * C64::new(2.0, 0.0);
                for i in 0..self.n {
                    d[(i, i)] -= C64::new(1.0, 0.0);
                }
                d
            }
        }
    }

    pub fn unitarity_defect(&self) -> f64 {
        match &self.kind {
            ConjugationKind::Dense(u) => unitarity_defect(u),
            ConjugationKind::Reflection { re, im } => {
                let nrm2: f64 = re.iter().chain(im).map(|a| a * a).sum();
                2.0 * (nrm2 - 1.0).abs()
            }
        }
    }

    pub fn apply(&self, coords: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.dim(), coords.len())?;
        match &self.kind {
            ConjugationKind::Dense(u) => {
                let rho = unembed(self.n, coords)?;
                embed(&(u * rho * u.adjoint()))
            }
            ConjugationKind::Reflection { re, im } => {
                let mut out = DVector::zeros(coords.len());
                apply_reflection(self.n, re, im, coords.as_slice(), out.as_mut_slice());
                Ok(out)
            }
        }
    }

    /// Like [`Conjugation::apply`] but writes into `out`.
    pub fn apply_into(&self, coords: &DVector<f64>, out: &mut DVector<f64>) -> Result<()> {
        check_dim(self.dim(), coords.len())?;
        check_dim(self.dim(), out.len())?;
        match &self.kind {
            ConjugationKind::Reflection { re, im } => {
                apply_reflection(self.n, re, im, coords.as_slice(), out.as_mut_slice())
            }
            ConjugationKind::Dense(_) => *out = self.apply(coords)?,
        }
        Ok(())
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        match &self.kind {
            ConjugationKind::Dense(u) => lift_conjugation_dense(u),
            ConjugationKind::Reflection { .. } => lift_conjugation_dense(&self.unitary()),
        }
    }
}

/// `ρ ↦ DρD` for `D = 2φφ† − 𝟙` in `O(N²)`:
/// `DρD = ρ − 2φv† − 2vφ† + 4c·φφ†` with `v = ρφ`, `c = φ†ρφ`.
fn apply_reflection(n: usize, pr: &[f64], pi: &[f64], x: &[f64], out: &mut [f64]) {
    if pi.iter().all(|&v| v == 0.0) {
        return apply_real_reflection(n, pr, x, out);
    }
    let inv = 1.0 / SQRT_2;
    let (diag, pairs) = x.split_at(n);
    let mut vr: Vec<f64> = diag.iter().zip(pr).map(|(d, p)| d * p).collect();
    let mut vi: Vec<f64> = diag.iter().zip(pi).map(|(d, p)| d * p).collect();

    // row i of the strict upper triangle is contiguous: 2(n − i − 1) coordinates
    let mut off = 0;
    for i in 0..n {
        let len = n - i - 1;
        let row = &pairs[off..off + 2 * len];
        let (pri, pii) = (pr[i], pi[i]);
        // two interleaved accumulator pairs break the add dependency chain
        let mut acc = [0.0f64; 4];
        let tail = i + 1..n;
        let (pr_t, pi_t) = (&pr[tail.clone()], &pi[tail.clone()]);
        let (vr_t, vi_t) = (&mut vr[tail.clone()], &mut vi[tail]);
        for j in 0..len {
            let a = row[2 * j] * inv;
            let b = row[2 * j + 1] * inv;
            let (prj, pij) = (pr_t[j], pi_t[j]);
            let lane = 2 * (j & 1);
            // v_i += ρ_ij φ_j
            acc[lane] += a * prj - b * pij;
            acc[lane + 1] += a * pij + b * prj;
            // v_j += conj(ρ_ij) φ_i
            vr_t[j] += a * pri + b * pii;
            vi_t[j] += a * pii - b * pri;
        }
        let (acc_r, acc_i) = (acc[0] + acc[2], acc[1] + acc[3]);
        vr[i] += acc_r;
        vi[i] += acc_i;
        off += 2 * len;
    }
    let c: f64 = (0..n).map(|i| pr[i] * vr[i] + pi[i] * vi[i]).sum();

    let (out_diag, out_pairs) = out.split_at_mut(n);
    for i in 0..n {
        let pv = pr[i] * vr[i] + pi[i] * vi[i];
        let pp = pr[i] * pr[i] + pi[i] * pi[i];
        out_diag[i] = diag[i] - 4.0 * pv + 4.0 * c * pp;
    }
    let c4 = 4.0 * c;
    let mut off = 0;
    for i in 0..n {
        let len = n - i - 1;
        let (pri, pii, vri, vii) = (pr[i], pi[i], vr[i], vi[i]);
        let tail = i + 1..n;
        for (((((dst, src), &prj), &pij), &vrj), &vij) in out_pairs[off..off + 2 * len]
            .chunks_exact_mut(2)
            .zip(pairs[off..off + 2 * len].chunks_exact(2))
            .zip(&pr[tail.clone()])
            .zip(&pi[tail.clone()])
            .zip(&vr[tail.clone()])
            .zip(&vi[tail])
        {
            // φ_i conj(v_j) + v_i conj(φ_j), and φ_i conj(φ_j)
            let t_r = pri * vrj + pii * vij + vri * prj + vii * pij;
            let t_i = pii * vrj - pri * vij + vii * prj - vri * pij;
            let f_r = pri * prj + pii * pij;
            let f_i = pii * prj - pri * pij;
            dst[0] = src[0] + SQRT_2 * (c4 * f_r - 2.0 * t_r);
            dst[1] = src[1] + SQRT_2 * (c4 * f_i - 2.0 * t_i);
        }
        off += 2 * len;
    }
}

/// [`apply_reflection`] for a real axis `φ`, where every imaginary cross term vanishes.
fn apply_real_reflection(n: usize, p: &[f64], x: &[f64], out: &mut [f64]) {
    let inv = 1.0 / SQRT_2;
    let (diag, pairs) = x.split_at(n);
    let mut vr: Vec<f64> = diag.iter().zip(p).map(|(d, q)| d * q).collect();
    let mut vi = vec![0.0; n];

    let mut off = 0;
    for i in 0..n {
        let len = n - i - 1;
        let row = &pairs[off..off + 2 * len];
        let pi_ = p[i] * inv;
        let mut acc = [0.0f64; 4];
        let (vr_t, vi_t) = (&mut vr[i + 1..], &mut vi[i + 1..]);
        let p_t = &p[i + 1..];
        let mut quads = row.chunks_exact(4);
        let mut j = 0;
        for q in quads.by_ref() {
            acc[0] += q[0] * p_t[j];
            acc[1] += q[1] * p_t[j];
            acc[2] += q[2] * p_t[j + 1];
            acc[3] += q[3] * p_t[j + 1];
            vr_t[j] += q[0] * pi_;
            vi_t[j] -= q[1] * pi_;
            vr_t[j + 1] += q[2] * pi_;
            vi_t[j + 1] -= q[3] * pi_;
            j += 2;
        }
        if let [a, b] = quads.remainder() {
            acc[0] += a * p_t[j];
            acc[1] += b * p_t[j];
            vr_t[j] += a * pi_;
            vi_t[j] -= b * pi_;
        }
        vr[i] += (acc[0] + acc[2]) * inv;
        vi[i] += (acc[1] + acc[3]) * inv;
        off += 2 * len;
    }
    let c: f64 = p.iter().zip(&vr).map(|(a, b)| a * b).sum();

    let (out_diag, out_pairs) = out.split_at_mut(n);
    for i in 0..n {
        out_diag[i] = diag[i] - 4.0 * p[i] * vr[i] + 4.0 * c * p[i] * p[i];
    }
    let c4 = 4.0 * c;
    let mut off = 0;
    for i in 0..n {
        let len = n - i - 1;
        let (pi_, vri, vii) = (p[i], vr[i], vi[i]);
        let src = &pairs[off..off + 2 * len];
        let dst = &mut out_pairs[off..off + 2 * len];
        for ((((d, s), &pj), &vrj), &vij) in dst
            .chunks_exact_mut(2)
            .zip(src.chunks_exact(2))
            .zip(&p[i + 1..])
            .zip(&vr[i + 1..])
            .zip(&vi[i + 1..])
        {
            let t_r = pi_ * vrj + vri * pj;
            let t_i = vii * pj - pi_ * vij;
            d[0] = s[0] + SQRT_2 * (c4 * pi_ * pj - 2.0 * t_r);
            d[1] = s[1] - SQRT_2 * 2.0 * t_i;
        }
        off += 2 * len;
    }
}
