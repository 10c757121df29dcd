//! Cyclic Jacobi eigensolver for small Hermitian matrices.
//!
//! Each pivot (p, q) is annihilated by a unitary plane rotation: the phase of
//! `a_pq` is first absorbed into the second basis vector, which leaves a real
//! symmetric 2×2 block, and the usual real Jacobi angle then zeros it.

use super::complex::{CMatrix, CVector, C64, ZERO};
use crate::error::{Error, Result};

/// Input is accepted as Hermitian when max |m - m†| does not exceed this.
pub const HERMITIAN_TOL: f64 = 1e-9;

const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `m = V diag(values) V†`.
#[derive(Clone, Debug)]
pub struct HermitianEigen<const N: usize> {
    /// Ascending.
    pub values: [f64; N],
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: CMatrix<N>,
}

impl<const N: usize> HermitianEigen<N> {
    pub fn vector(&self, k: usize) -> CVector<N> {
        self.vectors.column(k)
    }

    /// Rebuild `V f(Λ) V†` for a real function of the eigenvalues.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> CMatrix<N> {
        let mapped: [f64; N] = std::array::from_fn(|k| f(self.values[k]));
        let v = &self.vectors;
        CMatrix::from_fn(|i, j| {
            (0..N)
                .map(|k| v.0[i][k] * v.0[j][k].conj() * mapped[k])
                .sum()
        })
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
pub fn hermitian_eig<const N: usize>(m: &CMatrix<N>) -> Result<HermitianEigen<N>> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }

    // work on the exactly Hermitian part
    let mut a = CMatrix::<N>::from_fn(|i, j| (m.0[i][j] + m.0[j][i].conj()) * 0.5);
    let mut v = CMatrix::<N>::identity();
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|k| k);
    order.sort_by(|&x, &y| a.0[x][x].re.total_cmp(&a.0[y][y].re));

    let values: [f64; N] = std::array::from_fn(|k| a.0[order[k]][order[k]].re);
    let mut vectors = CMatrix::<N>::from_fn(|i, k| v.0[i][order[k]]);
    for k in 0..N {
        fix_phase(&mut vectors, k);
    }
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm<const N: usize>(a: &CMatrix<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a.0[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate<const N: usize>(a: &mut CMatrix<N>, v: &mut CMatrix<N>, p: usize, q: usize) {
    let apq = a.0[p][q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = a.0[p][p].re;
    let aqq = a.0[q][q].re;

    let theta = (aqq - app) / (2.0 * g);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // rotation block: V_pp = c, V_pq = s, V_qp = -s e^{-iα}, V_qq = c e^{-iα}
    let vpp = C64::new(c, 0.0);
    let vpq = C64::new(s, 0.0);
    let vqp = -phase.conj() * s;
    let vqq = phase.conj() * c;

    // a <- a V, v <- v V (columns p, q)
    for row in 0..N {
        let (xp, xq) = (a.0[row][p], a.0[row][q]);
        a.0[row][p] = xp * vpp + xq * vqp;
        a.0[row][q] = xp * vpq + xq * vqq;
        let (yp, yq) = (v.0[row][p], v.0[row][q]);
        v.0[row][p] = yp * vpp + yq * vqp;
        v.0[row][q] = yp * vpq + yq * vqq;
    }
    // a <- V† a (rows p, q)
    for col in 0..N {
        let (xp, xq) = (a.0[p][col], a.0[q][col]);
        a.0[p][col] = vpp.conj() * xp + vqp.conj() * xq;
        a.0[q][col] = vpq.conj() * xp + vqq.conj() * xq;
    }
    a.0[p][q] = ZERO;
    a.0[q][p] = ZERO;
    a.0[p][p].im = 0.0;
    a.0[q][q].im = 0.0;
}

/// Make the first largest-modulus component of column k real and positive.
fn fix_phase<const N: usize>(v: &mut CMatrix<N>, k: usize) {
    let mut best = 0;
    let mut best_norm = -1.0;
    for i in 0..N {
        let n = v.0[i][k].norm();
        if n > best_norm + 1e-12 {
            best = i;
            best_norm = n;
        }
    }
    if best_norm <= 0.0 {
        return;
    }
    let phase = v.0[best][k].conj() / best_norm;
    for i in 0..N {
        v.0[i][k] *= phase;
    }
    v.0[best][k].im = 0.0;
}
