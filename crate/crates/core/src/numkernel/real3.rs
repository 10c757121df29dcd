//! Real 3×3 algebra and the sign-carrying SVD used for canonicalization.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vector3 = [f64; 3];

/// Tolerance for orthogonality and unit determinant of a [`Rotation3`].
pub const ROTATION_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix3(pub [[f64; 3]; 3]);

impl Matrix3 {
    pub fn zeros() -> Self {
        Matrix3([[0.0; 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diag([1.0, 1.0, 1.0])
    }

    pub fn diag(d: Vector3) -> Self {
        let mut m = Self::zeros();
        for (i, di) in d.iter().enumerate() {
            m.0[i][i] = *di;
        }
        m
    }

    pub fn from_columns(c: [Vector3; 3]) -> Self {
        let mut m = Self::zeros();
        for (j, col) in c.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.0[i][j] = *x;
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vector3 {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn mul_vec(&self, v: &Vector3) -> Vector3 {
        std::array::from_fn(|i| (0..3).map(|k| self.0[i][k] * v[k]).sum())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl Mul for Matrix3 {
    type Output = Matrix3;
    fn mul(self, rhs: Matrix3) -> Matrix3 {
        let mut m = Matrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        m
    }
}

pub fn dot(a: &Vector3, b: &Vector3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vector3, b: &Vector3) -> Vector3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: &Vector3) -> f64 {
    dot(a, a).sqrt()
}

fn scaled(a: &Vector3, s: f64) -> Vector3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn negated(a: &Vector3) -> Vector3 {
    scaled(a, -1.0)
}

/// A proper rotation: OᵀO = I and det O = +1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rotation3(Matrix3);

impl Rotation3 {
    pub fn identity() -> Self {
        Rotation3(Matrix3::identity())
    }

    pub fn new(m: Matrix3) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let ortho = (m.transpose() * m).max_abs_diff(&Matrix3::identity());
        let det = m.det();
        if ortho > ROTATION_TOL || (det - 1.0).abs() > ROTATION_TOL {
            return Err(Error::PreconditionFailed(format!(
                "not a proper rotation (orthogonality error {ortho:.3e}, det {det})"
            )));
        }
        Ok(Rotation3(m))
    }

    /// π-rotation about coordinate axis `k`: flips the signs of the other two axes.
    pub fn half_turn(k: usize) -> Self {
        let mut d = [-1.0; 3];
        d[k] = 1.0;
        Rotation3(Matrix3::diag(d))
    }

    pub(crate) fn from_matrix_unchecked(m: Matrix3) -> Self {
        Rotation3(m)
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Rotation3(self.0.transpose())
    }

    pub fn apply(&self, v: &Vector3) -> Vector3 {
        self.0.mul_vec(v)
    }

    pub fn compose(&self, other: &Rotation3) -> Rotation3 {
        Rotation3(self.0 * other.0)
    }
}

/// `o1 · t · o2ᵀ = diag(d)` with proper rotations and `d₁ ≥ d₂ ≥ |d₃|`,
/// `d₁, d₂ ≥ 0`, and `sign(d₃) = sign(det t)`.
#[derive(Clone, Copy, Debug)]
pub struct SpecialSvd {
    pub o1: Rotation3,
    pub d: Vector3,
    pub o2: Rotation3,
}

const SVD_MAX_SWEEPS: usize = 60;

/// Singular value decomposition with both factors forced into SO(3).
///
/// One-sided Jacobi orthogonalizes the columns of `t`; the left factor is then
/// completed as `u₃ = u₁ × u₂` so it is proper by construction, and the sign of
/// the determinant lands on the third singular value. Ties are broken by
/// making the first significant component of the leading two right singular
/// vectors positive.
pub fn svd3_special(t: &Matrix3) -> SpecialSvd {
    let mut a = [t.column(0), t.column(1), t.column(2)];
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

    for _ in 0..SVD_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..3 {
                let alpha = dot(&a[p], &a[p]);
                let beta = dot(&a[q], &a[q]);
                let gamma = dot(&a[p], &a[q]);
                if gamma == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let tn = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let tn = if zeta == 0.0 { 1.0 } else { tn };
                let c = 1.0 / (1.0 + tn * tn).sqrt();
                let s = c * tn;
                for k in 0..3 {
                    let (ap, aq) = (a[p][k], a[q][k]);
                    a[p][k] = c * ap - s * aq;
                    a[q][k] = s * ap + c * aq;
                    let (vp, vq) = (v[p][k], v[q][k]);
                    v[p][k] = c * vp - s * vq;
                    v[q][k] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    // sort column pairs by descending norm
    let mut order = [0usize, 1, 2];
    let norms = [norm(&a[0]), norm(&a[1]), norm(&a[2])];
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let a = order.map(|k| a[k]);
    let mut v = order.map(|k| v[k]);
    let sigma = order.map(|k| norms[k]);

    let scale = sigma[0].max(f64::MIN_POSITIVE);
    let negligible = 1e-14 * scale;

    let u1 = if sigma[0] > negligible {
        scaled(&a[0], 1.0 / sigma[0])
    } else {
        [1.0, 0.0, 0.0]
    };
    let u2 = {
        let mut w = if sigma[1] > negligible {
            a[1]
        } else {
            least_aligned_axis(&u1)
        };
        let proj = dot(&w, &u1);
        w = [w[0] - proj * u1[0], w[1] - proj * u1[1], w[2] - proj * u1[2]];
        let n = norm(&w);
        if n > 1e-8 {
            scaled(&w, 1.0 / n)
        } else {
            let axis = least_aligned_axis(&u1);
            let c = cross(&u1, &axis);
            scaled(&c, 1.0 / norm(&c))
        }
    };
    let mut u = [u1, u2, cross(&u1, &u2)];
    let mut d = [dot(&u[0], &a[0]), dot(&u[1], &a[1]), dot(&u[2], &a[2])];
    // a completed u₂ can give a tiny negative d₂
    if d[1] < 0.0 {
        u[1] = negated(&u[1]);
        u[2] = negated(&u[2]);
        d[1] = -d[1];
        d[2] = -d[2];
    }

    // right factor proper: flip v₃ and carry the sign on d₃
    let vdet = Matrix3::from_columns(v).det();
    if vdet < 0.0 {
        v[2] = negated(&v[2]);
        d[2] = -d[2];
    }

    // deterministic sign of the leading pairs; pair 3 is flipped alongside to
    // keep both determinants at +1
    for i in 0..2 {
        if first_significant(&v[i]) < 0.0 {
            u[i] = negated(&u[i]);
            v[i] = negated(&v[i]);
            u[2] = negated(&u[2]);
            v[2] = negated(&v[2]);
        }
    }

    let umat = Matrix3::from_columns(u);
    let vmat = Matrix3::from_columns(v);
    SpecialSvd {
        o1: Rotation3::from_matrix_unchecked(umat.transpose()),
        d,
        o2: Rotation3::from_matrix_unchecked(vmat.transpose()),
    }
}

fn least_aligned_axis(u: &Vector3) -> Vector3 {
    let mut k = 0;
    for i in 1..3 {
        if u[i].abs() < u[k].abs() {
            k = i;
        }
    }
    let mut e = [0.0; 3];
    e[k] = 1.0;
    e
}

fn first_significant(v: &Vector3) -> f64 {
    v.iter().copied().find(|x| x.abs() > 1e-12).unwrap_or(0.0)
}
