//! State properties: normalized linear entropy, the CHSH quantity, Wootters
//! concurrence and negativity.

use serde::Serialize;

use crate::canonical::CanonicalForm;
use crate::numkernel::{hermitian_eig, pauli_pair, svd3_special, CVector};
use crate::qstate::{hs_decompose, partial_transpose, DensityMatrix};

/// Spin-flip eigenvalues below this are treated as zero before square roots.
const SPECTRUM_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub linear_entropy: f64,
    pub chsh_m: f64,
    pub chsh_b: f64,
    pub concurrence: f64,
    pub negativity: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Chsh {
    /// Sum of the two largest squared singular values of T.
    pub m: f64,
    /// Maximal Bell-CHSH mean value, 2√m.
    pub b: f64,
}

impl Chsh {
    pub fn violates(&self) -> bool {
        self.m > 1.0
    }
}

/// L = (4/3)(1 − Tr ρ²)
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    (4.0 / 3.0 * (1.0 - rho.purity())).clamp(0.0, 1.0)
}

/// L = 1 − ⅓ Σ (r_i² + s_i² + t_i²), evaluated on canonical parameters.
pub fn linear_entropy_canonical(c: &CanonicalForm) -> f64 {
    let sq = |v: &[f64; 3]| v.iter().map(|x| x * x).sum::<f64>();
    1.0 - (sq(&c.r) + sq(&c.s) + sq(&c.t_abs)) / 3.0
}

pub fn chsh(rho: &DensityMatrix) -> Chsh {
    let d = svd3_special(&hs_decompose(rho).t).d;
    let m = d[0] * d[0] + d[1] * d[1];
    Chsh { m, b: 2.0 * m.sqrt() }
}

/// C = max(0, a₁ − a₂ − a₃ − a₄), a_i the descending square roots of the
/// spectrum of ρ(σ₂⊗σ₂)ρ*(σ₂⊗σ₂).
///
/// The spectrum is taken from the Hermitian matrix √ρ ρ̃ √ρ with
/// ρ̃ = (σ₂⊗σ₂)ρ*(σ₂⊗σ₂), which is similar to the product above.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let eig = hermitian_eig(rho.matrix()).expect("density matrix is Hermitian");
    let sqrt_rho = eig.map_spectrum(|x| x.max(0.0).sqrt());
    let yy = pauli_pair(2, 2);
    let flipped = yy * rho.matrix().conj() * yy;
    let m = sqrt_rho * flipped * sqrt_rho;
    let m = crate::numkernel::CMatrix4::from_fn(|i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let spec = hermitian_eig(&m).expect("symmetrized product is Hermitian");
    let mut a = spec
        .values
        .map(|x| if x < SPECTRUM_FLOOR { 0.0 } else { x.sqrt() });
    a.sort_by(|x, y| y.total_cmp(x));
    (a[0] - a[1] - a[2] - a[3]).clamp(0.0, 1.0)
}

/// Smallest eigenvalue of ρ^Γ and its eigenvector.
pub fn min_pt_eigenpair(rho: &DensityMatrix) -> (f64, CVector<4>) {
    let e = hermitian_eig(&partial_transpose(rho)).expect("partial transpose is Hermitian");
    (e.values[0], e.vector(0))
}

/// N = max(0, −2 λ_min(ρ^Γ))
pub fn negativity(rho: &DensityMatrix) -> f64 {
    let (lmin, _) = min_pt_eigenpair(rho);
    (-2.0 * lmin).clamp(0.0, 1.0)
}

pub fn report(rho: &DensityMatrix) -> PropertyReport {
    let c = chsh(rho);
    PropertyReport {
        linear_entropy: linear_entropy(rho),
        chsh_m: c.m,
        chsh_b: c.b,
        concurrence: concurrence(rho),
        negativity: negativity(rho),
    }
}
