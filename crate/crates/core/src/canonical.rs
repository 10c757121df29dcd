//! Canonical form of a two-qubit state.
//!
//! A product unitary U₁⊗U₂ brings the correlation matrix to diagonal form
//! diag(λ_i |t_ii|) with |t₁₁| ≥ |t₂₂| ≥ |t₃₃| and the sign pattern
//!
//! * det T < 0: λ = (−1, −1, −1)
//! * det T > 0: λ = (−1, −1, +1), the two minus signs on the largest magnitudes
//! * det T = 0: λ = −1 wherever |t_ii| ≠ 0
//!
//! The local vectors rotate along: r = O₁R and s = O₂S.

use serde::Serialize;

use crate::error::Result;
use crate::numkernel::{
    rotation_to_spin, svd3_special, CMatrix2, Matrix3, Rotation3, SpinUnitary, Vector3,
};
use crate::qstate::{hs_compose, hs_decompose, DensityMatrix, HilbertSchmidtForm};

/// |det T| below this is treated as zero.
pub const DET_ZERO_TOL: f64 = 1e-12;
/// Singular values closer than this are reported as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DetClass {
    Negative,
    Zero,
    Positive,
}

impl DetClass {
    pub fn of(det: f64) -> Self {
        if det.abs() < DET_ZERO_TOL {
            DetClass::Zero
        } else if det < 0.0 {
            DetClass::Negative
        } else {
            DetClass::Positive
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CanonicalForm {
    pub r: Vector3,
    pub s: Vector3,
    /// |t_ii|, descending.
    pub t_abs: Vector3,
    pub lambda: [i8; 3],
    pub det_class: DetClass,
    pub det_t: f64,
    pub o1: Rotation3,
    pub o2: Rotation3,
    pub u1: SpinUnitary,
    pub u2: SpinUnitary,
    /// Some pair of |t_ii| lies within [`DEGENERACY_GAP`]; O₁, O₂ (and hence
    /// r, s) are then not unique.
    pub degenerate: bool,
}

impl CanonicalForm {
    /// A canonical form given directly by its parameters, with identity
    /// rotations. `t_abs` is sorted descending; the sign pattern follows from
    /// `det_class`.
    pub fn from_parameters(r: Vector3, s: Vector3, t_abs: Vector3, det_class: DetClass) -> Self {
        let mut t_abs = t_abs.map(f64::abs);
        t_abs.sort_by(|a, b| b.total_cmp(a));
        let lambda = match det_class {
            DetClass::Positive => [-1, -1, 1],
            _ => [-1, -1, -1],
        };
        let det_t = lambda
            .iter()
            .zip(t_abs.iter())
            .map(|(l, t)| f64::from(*l) * t)
            .product();
        CanonicalForm {
            r,
            s,
            t_abs,
            lambda,
            det_class,
            det_t,
            o1: Rotation3::identity(),
            o2: Rotation3::identity(),
            u1: SpinUnitary::identity(),
            u2: SpinUnitary::identity(),
            degenerate: is_degenerate(&t_abs),
        }
    }

    /// diag(λ_i |t_ii|)
    pub fn signed_t(&self) -> Vector3 {
        std::array::from_fn(|i| f64::from(self.lambda[i]) * self.t_abs[i])
    }

    pub fn t_sum(&self) -> f64 {
        self.t_abs.iter().sum()
    }

    pub fn hs_form(&self) -> HilbertSchmidtForm {
        HilbertSchmidtForm::new(self.r, self.s, Matrix3::diag(self.signed_t()))
    }

    /// (U₁⊗U₂) ρ (U₁⊗U₂)†: the canonical state as obtained from `rho` itself.
    pub fn apply_to(&self, rho: &DensityMatrix) -> DensityMatrix {
        rho.local_transform(self.u1.matrix(), self.u2.matrix())
    }

    pub fn local_unitaries(&self) -> (CMatrix2, CMatrix2) {
        (*self.u1.matrix(), *self.u2.matrix())
    }
}

fn is_degenerate(t: &Vector3) -> bool {
    (t[0] - t[1]).abs() < DEGENERACY_GAP
        || (t[1] - t[2]).abs() < DEGENERACY_GAP
        || (t[0] - t[2]).abs() < DEGENERACY_GAP
}

pub fn canonicalize(rho: &DensityMatrix) -> CanonicalForm {
    canonicalize_hs(&hs_decompose(rho))
}

/// Canonical form from Bloch coefficients.
pub fn canonicalize_hs(f: &HilbertSchmidtForm) -> CanonicalForm {
    let svd = svd3_special(&f.t);
    let det_t = f.t.det();
    let det_class = DetClass::of(det_t);

    // the half-turn about z negates the two leading diagonal entries, leaving
    // the sign of det T on the third
    let o1 = Rotation3::half_turn(2).compose(&svd.o1);
    let o2 = svd.o2;
    let d = svd.d;
    // |d₃| ≤ d₂ holds up to rounding; make the order exact
    let t_abs = [d[0], d[1], d[2].abs().min(d[1])];
    let lambda = [-1, -1, if d[2] > 0.0 { 1 } else { -1 }];

    CanonicalForm {
        r: o1.apply(&f.r),
        s: o2.apply(&f.s),
        t_abs,
        lambda,
        det_class,
        det_t,
        o1,
        o2,
        u1: rotation_to_spin(&o1.transpose()),
        u2: rotation_to_spin(&o2.transpose()),
        degenerate: is_degenerate(&t_abs),
    }
}

/// The state ¼(I⊗I + r·σ⊗I + I⊗s·σ + Σ λ_i|t_ii| σ_i⊗σ_i).
pub fn canonical_state(c: &CanonicalForm) -> Result<DensityMatrix> {
    hs_compose(&c.hs_form())
}
