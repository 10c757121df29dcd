//! Two-qubit states: validated density matrices, the Hilbert–Schmidt
//! (Bloch) decomposition, partial transposition, standard constructors and
//! seeded random sampling.
//!
//! Basis order is |00⟩, |01⟩, |10⟩, |11⟩ with the first qubit as the most
//! significant index. Pauli convention: σ₁ = X, σ₂ = Y = (0, −i; i, 0),
//! σ₃ = Z.

mod format;
mod sample;

pub use format::{parse_scalar, parse_state_json, parse_vector3, state_to_json, StateSpec};
pub use sample::{sample_random_state, SampleKind, StateSampler};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{
    hermitian_eig, kron, pauli, pauli_pair, vec_norm, CMatrix2, CMatrix4, CVector, Matrix3,
    Vector3, C64,
};

/// Tolerance for Hermiticity, unit trace and positivity of a state.
pub const STATE_TOL: f64 = 1e-9;

/// A validated two-qubit density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(CMatrix4);

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity, each within 1e-9.
    pub fn validate(m: CMatrix4) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let deviation = m.hermitian_deviation();
        if deviation > STATE_TOL {
            return Err(Error::NonHermitian { deviation });
        }
        let trace = m.trace().re;
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let sym = CMatrix4::from_fn(|i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
        let worst_eigenvalue = hermitian_eig(&sym)?.values[0];
        if worst_eigenvalue < -STATE_TOL {
            return Err(Error::NotPositive { worst_eigenvalue });
        }
        Ok(DensityMatrix(sym))
    }

    pub fn matrix(&self) -> &CMatrix4 {
        &self.0
    }

    pub fn from_pure(psi: &PureState2Q) -> Self {
        DensityMatrix(CMatrix4::outer(&psi.0, &psi.0))
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(CMatrix4::identity().scale_real(0.25))
    }

    /// Tr ρ²
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    /// Re Tr(ρ A)
    pub fn expectation(&self, a: &CMatrix4) -> f64 {
        (self.0 * *a).trace().re
    }

    /// (U ⊗ V) ρ (U ⊗ V)†. Unitarity of `u`, `v` is the caller's responsibility.
    pub fn local_transform(&self, u: &CMatrix2, v: &CMatrix2) -> DensityMatrix {
        let w: CMatrix4 = kron(u, v);
        let m = w * self.0 * w.dagger();
        // restore exact Hermiticity lost to rounding
        DensityMatrix(CMatrix4::from_fn(|i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5))
    }

    /// Convex combination p·self + (1−p)·other.
    pub fn mix(&self, other: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange {
                name: "p",
                value: p,
                interval: "[0, 1]",
            });
        }
        Ok(DensityMatrix(
            self.0.scale_real(p) + other.0.scale_real(1.0 - p),
        ))
    }
}

pub fn validate(m: CMatrix4) -> Result<DensityMatrix> {
    DensityMatrix::validate(m)
}

/// ρ = ¼(I⊗I + R·σ⊗I + I⊗S·σ + Σ T_ij σ_i⊗σ_j)
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertSchmidtForm {
    #[serde(rename = "R")]
    pub r: Vector3,
    #[serde(rename = "S")]
    pub s: Vector3,
    #[serde(rename = "T")]
    pub t: Matrix3,
}

impl HilbertSchmidtForm {
    pub fn new(r: Vector3, s: Vector3, t: Matrix3) -> Self {
        HilbertSchmidtForm { r, s, t }
    }

    /// The operator the coefficients describe, without any positivity check.
    pub fn to_operator(&self) -> CMatrix4 {
        let mut m = CMatrix4::identity();
        for i in 0..3 {
            m = m + pauli_pair(i + 1, 0).scale_real(self.r[i]);
            m = m + pauli_pair(0, i + 1).scale_real(self.s[i]);
            for j in 0..3 {
                let tij = self.t.0[i][j];
                if tij != 0.0 {
                    m = m + pauli_pair(i + 1, j + 1).scale_real(tij);
                }
            }
        }
        m.scale_real(0.25)
    }
}

pub fn hs_decompose(rho: &DensityMatrix) -> HilbertSchmidtForm {
    let mut f = HilbertSchmidtForm::new([0.0; 3], [0.0; 3], Matrix3::zeros());
    for i in 0..3 {
        f.r[i] = rho.expectation(&pauli_pair(i + 1, 0));
        f.s[i] = rho.expectation(&pauli_pair(0, i + 1));
        for j in 0..3 {
            f.t.0[i][j] = rho.expectation(&pauli_pair(i + 1, j + 1));
        }
    }
    f
}

/// Builds the state from its Bloch coefficients; fails with `NotPositive`
/// when they do not describe a state.
pub fn hs_compose(f: &HilbertSchmidtForm) -> Result<DensityMatrix> {
    if !(f.t.is_finite() && f.r.iter().chain(f.s.iter()).all(|x| x.is_finite())) {
        return Err(Error::NonFinite);
    }
    DensityMatrix::validate(f.to_operator())
}

/// Transpose of each 2×2 block, i.e. partial transposition of the second qubit.
pub fn partial_transpose_matrix(m: &CMatrix4) -> CMatrix4 {
    CMatrix4::from_fn(|i, j| {
        let (a, b) = (i / 2, i % 2);
        let (c, d) = (j / 2, j % 2);
        m[(2 * a + d, 2 * c + b)]
    })
}

pub fn partial_transpose(rho: &DensityMatrix) -> CMatrix4 {
    partial_transpose_matrix(rho.matrix())
}

/// Normalized two-qubit pure state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState2Q(CVector<4>);

impl PureState2Q {
    pub fn new(amplitudes: CVector<4>) -> Result<Self> {
        let n = vec_norm(&amplitudes);
        if !n.is_finite() || (n - 1.0).abs() > 1e-12 {
            return Err(Error::PreconditionFailed(format!(
                "pure state must have unit norm, got {n}"
            )));
        }
        Ok(PureState2Q(amplitudes))
    }

    pub fn normalized(amplitudes: CVector<4>) -> Result<Self> {
        let n = vec_norm(&amplitudes);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::PreconditionFailed("zero or non-finite vector".into()));
        }
        Ok(PureState2Q(amplitudes.map(|z| z / n)))
    }

    pub fn amplitudes(&self) -> &CVector<4> {
        &self.0
    }

    pub fn bell(which: BellState) -> Self {
        PureState2Q(which.vector())
    }
}

/// The four Bell states, numbered 1..=4 in the order Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PhiPlus,
        BellState::PhiMinus,
        BellState::PsiPlus,
        BellState::PsiMinus,
    ];

    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1..=4 => Ok(Self::ALL[usize::from(k - 1)]),
            _ => Err(Error::OutOfRange {
                name: "k",
                value: f64::from(k),
                interval: "{1, 2, 3, 4}",
            }),
        }
    }

    pub fn vector(self) -> CVector<4> {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        match self {
            BellState::PhiPlus => [h, z, z, h],
            BellState::PhiMinus => [h, z, z, -h],
            BellState::PsiPlus => [z, h, h, z],
            BellState::PsiMinus => [z, h, -h, z],
        }
    }
}

/// p|Φ⁺⟩⟨Φ⁺| + (1−p) I/4
pub fn make_werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            interval: "[0, 1]",
        });
    }
    let bell = DensityMatrix::from_pure(&PureState2Q::bell(BellState::PhiPlus));
    bell.mix(&DensityMatrix::maximally_mixed(), p)
}

/// a|00⟩ + √(1−a²)|11⟩
pub fn make_pure_schmidt(a: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::OutOfRange {
            name: "a",
            value: a,
            interval: "[0, 1]",
        });
    }
    let b = (1.0 - a * a).max(0.0).sqrt();
    let z = C64::new(0.0, 0.0);
    let psi = PureState2Q([C64::new(a, 0.0), z, z, C64::new(b, 0.0)]);
    Ok(DensityMatrix::from_pure(&psi))
}

pub fn make_bell(k: u8) -> Result<DensityMatrix> {
    let which = BellState::from_index(k)?;
    Ok(DensityMatrix::from_pure(&PureState2Q::bell(which)))
}

/// Reduced state of the first (`first = true`) or second qubit.
pub fn reduced_state(m: &CMatrix4, first: bool) -> CMatrix2 {
    CMatrix2::from_fn(|i, j| {
        (0..2)
            .map(|k| {
                if first {
                    m[(2 * i + k, 2 * j + k)]
                } else {
                    m[(2 * k + i, 2 * k + j)]
                }
            })
            .sum()
    })
}

/// Bloch vector of a single-qubit operator: n_k = Tr(σ_k m).
pub fn bloch_vector(m: &CMatrix2) -> Vector3 {
    std::array::from_fn(|k| (pauli(k + 1) * *m).trace().re)
}
