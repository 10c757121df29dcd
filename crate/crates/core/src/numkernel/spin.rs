//! Lift of SO(3) rotations to SU(2).

use serde::{Deserialize, Serialize};

use super::complex::{bloch_operator, pauli, CMatrix, CMatrix2, C64};
use super::real3::{Matrix3, Rotation3};
use crate::error::{Error, Result};

/// Special-unitary 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpinUnitary(CMatrix2);

impl SpinUnitary {
    pub fn identity() -> Self {
        SpinUnitary(CMatrix2::identity())
    }

    /// Checks unitarity and det = +1 within 1e-10.
    pub fn new(m: CMatrix2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let unitarity = (m.dagger() * m).max_abs_diff(&CMatrix2::identity());
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        if unitarity > 1e-10 || (det - C64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(Error::PreconditionFailed(format!(
                "not special unitary (unitarity error {unitarity:.3e}, det {det})"
            )));
        }
        Ok(SpinUnitary(m))
    }

    /// `w I - i (x X + y Y + z Z)` for a unit quaternion.
    pub fn from_quaternion(q: [f64; 4]) -> Self {
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        let [w, x, y, z] = q.map(|c| c / n);
        let m = CMatrix([
            [C64::new(w, -z), C64::new(-y, -x)],
            [C64::new(y, -x), C64::new(w, z)],
        ]);
        SpinUnitary(m)
    }

    pub fn matrix(&self) -> &CMatrix2 {
        &self.0
    }

    pub fn dagger(&self) -> CMatrix2 {
        self.0.dagger()
    }
}

/// The rotation M with `U (n·σ) U† = (M n)·σ`, i.e. `M_ij = ½ Tr(σ_i U σ_j U†)`.
pub fn adjoint_action(u: &CMatrix2) -> Matrix3 {
    let ud = u.dagger();
    let mut m = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let conj = u * &pauli(j + 1) * ud;
            m.0[i][j] = 0.5 * (pauli(i + 1) * conj).trace().re;
        }
    }
    m
}

/// SU(2) lift `U` of a rotation `O` such that `U (n·σ) U† = (Oᵀ n)·σ`.
///
/// The representative has `Re U₁₁ ≥ 0`; remaining ties go to the first
/// nonzero of `(Im U₁₁, Re U₂₁, Im U₂₁)` made positive.
pub fn rotation_to_spin(o: &Rotation3) -> SpinUnitary {
    let q = quaternion_of(&o.matrix().transpose());
    let [w, x, y, z] = q;
    // U₁₁ = w - iz, U₂₁ = y - ix
    let keys = [w, -z, y, -x];
    let sign = keys
        .iter()
        .copied()
        .find(|k| k.abs() > 1e-14)
        .map(f64::signum)
        .unwrap_or(1.0);
    SpinUnitary::from_quaternion(q.map(|c| c * sign))
}

/// Unit quaternion (w, x, y, z) of an active rotation matrix (Shepperd's method).
fn quaternion_of(m: &Matrix3) -> [f64; 4] {
    let r = &m.0;
    let tr = r[0][0] + r[1][1] + r[2][2];
    let q = if tr >= r[0][0].max(r[1][1]).max(r[2][2]) {
        let s = (1.0 + tr).max(0.0).sqrt() * 2.0;
        [
            0.25 * s,
            (r[2][1] - r[1][2]) / s,
            (r[0][2] - r[2][0]) / s,
            (r[1][0] - r[0][1]) / s,
        ]
    } else if r[0][0] >= r[1][1] && r[0][0] >= r[2][2] {
        let s = (1.0 + r[0][0] - r[1][1] - r[2][2]).max(0.0).sqrt() * 2.0;
        [
            (r[2][1] - r[1][2]) / s,
            0.25 * s,
            (r[0][1] + r[1][0]) / s,
            (r[0][2] + r[2][0]) / s,
        ]
    } else if r[1][1] >= r[2][2] {
        let s = (1.0 + r[1][1] - r[0][0] - r[2][2]).max(0.0).sqrt() * 2.0;
        [
            (r[0][2] - r[2][0]) / s,
            (r[0][1] + r[1][0]) / s,
            0.25 * s,
            (r[1][2] + r[2][1]) / s,
        ]
    } else {
        let s = (1.0 + r[2][2] - r[0][0] - r[1][1]).max(0.0).sqrt() * 2.0;
        [
            (r[1][0] - r[0][1]) / s,
            (r[0][2] + r[2][0]) / s,
            (r[1][2] + r[2][1]) / s,
            0.25 * s,
        ]
    };
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    q.map(|c| c / n)
}

/// Residual of `U (n·σ) U† = (Oᵀ n)·σ` over the three coordinate axes.
pub fn spin_relation_residual(u: &SpinUnitary, o: &Rotation3) -> f64 {
    let ot = o.matrix().transpose();
    let mut worst = 0.0_f64;
    for k in 0..3 {
        let mut n = [0.0; 3];
        n[k] = 1.0;
        let lhs = u.matrix() * &bloch_operator(&n) * u.dagger();
        let rhs = bloch_operator(&ot.mul_vec(&n));
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    worst
}
