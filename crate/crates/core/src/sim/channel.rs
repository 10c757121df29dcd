//! The teleportation protocol as an explicit quantum channel.

use crate::error::{Error, Result};
use crate::numkernel::{
    bloch_operator, dot, kron, pauli, CMatrix, CMatrix2, CMatrix4, CMatrix8, Matrix3, Vector3, C64,
};
use crate::qstate::{bloch_vector, BellState, DensityMatrix};

/// Tolerance on ‖n‖ = 1 for an input Bloch vector.
pub const BLOCH_NORM_TOL: f64 = 1e-12;

/// A pure qubit input, given by its Bloch vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochInput {
    n: Vector3,
}

impl BlochInput {
    pub fn new(n: Vector3) -> Result<Self> {
        let len = crate::numkernel::norm(&n);
        if !len.is_finite() {
            return Err(Error::NonFinite);
        }
        if (len - 1.0).abs() > BLOCH_NORM_TOL {
            return Err(Error::PreconditionFailed(format!(
                "input Bloch vector has norm {len}, expected 1"
            )));
        }
        Ok(BlochInput { n })
    }

    /// Scales a nonzero vector onto the sphere.
    pub fn normalized(v: Vector3) -> Result<Self> {
        let len = crate::numkernel::norm(&v);
        if !(len.is_finite() && len > 0.0) {
            return Err(Error::PreconditionFailed("cannot normalize a zero vector".into()));
        }
        Ok(BlochInput { n: v.map(|x| x / len) })
    }

    pub fn n(&self) -> &Vector3 {
        &self.n
    }

    /// |ψ⟩⟨ψ| = ½(I + n·σ)
    pub fn projector(&self) -> CMatrix2 {
        (CMatrix2::identity() + bloch_operator(&self.n)).scale_real(0.5)
    }
}

/// Bell measurement on (input, first resource qubit) followed by a Pauli
/// correction on the second resource qubit.
///
/// The outcome-to-correction table is fixed by demanding perfect transfer
/// through the reference Bell state: for outcome k the receiver applies the
/// Pauli σ with σ·M_k ∝ I, where M_k is the map from the input amplitudes to
/// the receiver's conditional state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TeleportProtocol {
    reference: BellState,
    /// Pauli index (0 = I) applied after each outcome, in `BellState::ALL` order.
    corrections: [usize; 4],
}

impl TeleportProtocol {
    /// The textbook protocol keyed to |Φ⁺⟩: identity correction on the |Φ⁺⟩ outcome.
    pub fn standard() -> Self {
        Self::keyed(BellState::PhiPlus)
    }

    /// Keyed to the singlet |Ψ⁻⟩, the maximally entangled state of the
    /// canonical form. On a canonical state this attains the maximal fidelity.
    pub fn singlet() -> Self {
        Self::keyed(BellState::PsiMinus)
    }

    pub fn keyed(reference: BellState) -> Self {
        let r = reference.vector();
        let corrections = BellState::ALL.map(|outcome| {
            let b = outcome.vector();
            // M[c][a] = Σ_a1 conj(B[2a + a1]) R[2 a1 + c]
            let m = CMatrix2::from_fn(|c, a| {
                (0..2).map(|a1| b[2 * a + a1].conj() * r[2 * a1 + c]).sum()
            });
            let k = (0..4)
                .max_by(|&i, &j| {
                    let ti = (pauli(i) * m).trace().norm();
                    let tj = (pauli(j) * m).trace().norm();
                    ti.total_cmp(&tj)
                })
                .expect("four candidates");
            let fixed = pauli(k) * m;
            let alpha = fixed[(0, 0)];
            debug_assert!(fixed.max_abs_diff(&CMatrix2::identity().scale(alpha)) < 1e-12);
            k
        });
        TeleportProtocol {
            reference,
            corrections,
        }
    }

    pub fn reference(&self) -> BellState {
        self.reference
    }

    /// Correction Pauli index for each Bell outcome (Φ⁺, Φ⁻, Ψ⁺, Ψ⁻).
    pub fn corrections(&self) -> [usize; 4] {
        self.corrections
    }

    /// Σ_k σ_k Tr₀₁[(P_k⊗I)(X⊗ρ)(P_k⊗I)] σ_k for an arbitrary single-qubit
    /// operator X; linear in X.
    pub fn apply_operator(&self, resource: &DensityMatrix, x: &CMatrix2) -> CMatrix2 {
        let joint: CMatrix8 = kron(x, resource.matrix());
        let id2 = CMatrix2::identity();
        let mut out = CMatrix2::zeros();
        for (outcome, &k) in BellState::ALL.iter().zip(&self.corrections) {
            let v = outcome.vector();
            let p4 = CMatrix4::outer(&v, &v);
            let p8: CMatrix8 = kron(&p4, &id2);
            let post = p8 * joint * p8;
            let reduced = partial_trace_first_two(&post);
            let s = pauli(k);
            out = out + s * reduced * s;
        }
        out
    }

    /// Output state and fidelity ⟨ψ|out|ψ⟩ for one pure input.
    pub fn channel(&self, resource: &DensityMatrix, input: &BlochInput) -> (CMatrix2, f64) {
        let psi = input.projector();
        let out = self.apply_operator(resource, &psi);
        let f = (psi * out).trace().re;
        (out, f)
    }
}

fn partial_trace_first_two(m: &CMatrix8) -> CMatrix2 {
    CMatrix::from_fn(|c, d| (0..4).map(|a| m[(2 * a + c, 2 * a + d)]).sum::<C64>())
}

/// [`TeleportProtocol::channel`] for the standard protocol.
pub fn teleport_channel(resource: &DensityMatrix, input: &BlochInput) -> (CMatrix2, f64) {
    TeleportProtocol::standard().channel(resource, input)
}

/// The channel as an affine map on Bloch vectors, m_out = b + Λ n, so that the
/// per-input fidelity is f(n) = ½(1 + n·b + nᵀΛn).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochChannel {
    pub offset: Vector3,
    pub linear: Matrix3,
}

impl BlochChannel {
    /// Built from the explicit channel acting on I/2 and σ_k/2.
    pub fn of(protocol: &TeleportProtocol, resource: &DensityMatrix) -> Self {
        let half = |k: usize| pauli(k).scale_real(0.5);
        let offset = bloch_vector(&protocol.apply_operator(resource, &half(0)));
        let cols: [Vector3; 3] =
            std::array::from_fn(|k| bloch_vector(&protocol.apply_operator(resource, &half(k + 1))));
        BlochChannel {
            offset,
            linear: Matrix3::from_columns(cols),
        }
    }

    pub fn fidelity(&self, n: &Vector3) -> f64 {
        0.5 * (1.0 + dot(n, &self.offset) + dot(n, &self.linear.mul_vec(n)))
    }
}
