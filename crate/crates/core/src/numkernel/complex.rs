use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Dense square complex matrix of fixed dimension, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix<const N: usize>(pub [[C64; N]; N]);

pub type CMatrix2 = CMatrix<2>;
pub type CMatrix4 = CMatrix<4>;
pub type CMatrix8 = CMatrix<8>;

pub type CVector<const N: usize> = [C64; N];

impl<const N: usize> Default for CMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> CMatrix<N> {
    pub const DIM: usize = N;

    pub fn zeros() -> Self {
        CMatrix([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real_diagonal(d: [f64; N]) -> Self {
        Self::from_fn(|i, j| if i == j { C64::new(d[i], 0.0) } else { ZERO })
    }

    /// Outer product |a⟩⟨b|.
    pub fn outer(a: &CVector<N>, b: &CVector<N>) -> Self {
        Self::from_fn(|i, j| a[i] * b[j].conj())
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn column(&self, j: usize) -> CVector<N> {
        let mut v = [ZERO; N];
        for (i, vi) in v.iter_mut().enumerate() {
            *vi = self.0[i][j];
        }
        v
    }

    pub fn mul_vec(&self, v: &CVector<N>) -> CVector<N> {
        let mut out = [ZERO; N];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..N).map(|k| self.0[i][k] * v[k]).sum();
        }
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// max |m_ij - conj(m_ji)|
    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    /// ⟨a| self |b⟩
    pub fn sandwich(&self, a: &CVector<N>, b: &CVector<N>) -> C64 {
        let mb = self.mul_vec(b);
        a.iter().zip(mb.iter()).map(|(x, y)| x.conj() * y).sum()
    }
}

impl<const N: usize> Index<(usize, usize)> for CMatrix<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Mul for CMatrix<N> {
    type Output = CMatrix<N>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<const N: usize> Mul<&CMatrix<N>> for &CMatrix<N> {
    type Output = CMatrix<N>;
    fn mul(self, rhs: &CMatrix<N>) -> CMatrix<N> {
        let mut out = CMatrix::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Add for CMatrix<N> {
    type Output = CMatrix<N>;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<const N: usize> Sub for CMatrix<N> {
    type Output = CMatrix<N>;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

// Serialized as rows of [re, im] pairs.
impl<const N: usize> Serialize for CMatrix<N> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .0
            .iter()
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de, const N: usize> Deserialize<'de> for CMatrix<N> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        if rows.len() != N || rows.iter().any(|r| r.len() != N) {
            return Err(D::Error::custom(format!("expected a {N}x{N} matrix")));
        }
        Ok(CMatrix::from_fn(|i, j| {
            let [re, im] = rows[i][j];
            C64::new(re, im)
        }))
    }
}

/// Kronecker product `a ⊗ b`. `C` must equal `A * B`.
pub fn kron<const A: usize, const B: usize, const C: usize>(
    a: &CMatrix<A>,
    b: &CMatrix<B>,
) -> CMatrix<C> {
    assert_eq!(A * B, C, "kron output dimension mismatch");
    CMatrix::from_fn(|i, j| a.0[i / B][j / B] * b.0[i % B][j % B])
}

/// Kronecker product of two vectors.
pub fn kron_vec<const A: usize, const B: usize, const C: usize>(
    a: &CVector<A>,
    b: &CVector<B>,
) -> CVector<C> {
    assert_eq!(A * B, C, "kron output dimension mismatch");
    let mut out = [ZERO; C];
    for (k, o) in out.iter_mut().enumerate() {
        *o = a[k / B] * b[k % B];
    }
    out
}

pub fn vec_norm<const N: usize>(v: &CVector<N>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inner<const N: usize>(a: &CVector<N>, b: &CVector<N>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// The identity and the three Pauli matrices, indexed 0..4 (σ₀ = I, σ₁ = X, σ₂ = Y, σ₃ = Z).
pub fn pauli(k: usize) -> CMatrix2 {
    match k {
        0 => CMatrix([[ONE, ZERO], [ZERO, ONE]]),
        1 => CMatrix([[ZERO, ONE], [ONE, ZERO]]),
        2 => CMatrix([[ZERO, -I], [I, ZERO]]),
        3 => CMatrix([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("pauli index {k} out of range"),
    }
}

/// n·σ for a real 3-vector n.
pub fn bloch_operator(n: &[f64; 3]) -> CMatrix2 {
    let mut m = CMatrix2::zeros();
    for (k, nk) in n.iter().enumerate() {
        m = m + pauli(k + 1).scale_real(*nk);
    }
    m
}

/// σ_a ⊗ σ_b with Pauli indices in 0..4.
pub fn pauli_pair(a: usize, b: usize) -> CMatrix4 {
    kron(&pauli(a), &pauli(b))
}
