//! Test-only reference computations, written independently of the library's
//! numerical kernels.

#![allow(dead_code)]

use num_complex::Complex64 as C;
use qtele_core::numkernel::CMatrix4;
use qtele_core::qstate::{DensityMatrix, SampleKind, StateSampler};
use qtele_core::sim::{BlochInput, TeleportProtocol};

/// Characteristic polynomial coefficients of a 4×4 matrix by
/// Faddeev–LeVerrier: λ⁴ + c₁λ³ + c₂λ² + c₃λ + c₄.
pub fn char_poly(a: &CMatrix4) -> [C; 4] {
    let n = 4;
    let mul = |x: &[[C; 4]; 4], y: &[[C; 4]; 4]| {
        let mut out = [[C::new(0.0, 0.0); 4]; 4];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out[i][j] += x[i][k] * y[k][j];
                }
            }
        }
        out
    };
    let mut m = [[C::new(0.0, 0.0); 4]; 4];
    let mut c = [C::new(0.0, 0.0); 4];
    let mut prev = C::new(1.0, 0.0);
    for k in 1..=n {
        // M_k = A M_{k−1} + c_{k−1} I
        let mut am = mul(&a.0, &m);
        for (i, row) in am.iter_mut().enumerate() {
            row[i] += prev;
        }
        m = am;
        let am = mul(&a.0, &m);
        let tr: C = (0..n).map(|i| am[i][i]).sum();
        let ck = -tr / k as f64;
        c[k - 1] = ck;
        prev = ck;
    }
    c
}

/// All four roots of a monic quartic by Durand–Kerner.
pub fn quartic_roots(c: &[C; 4]) -> [C; 4] {
    let p = |z: C| (((z + c[0]) * z + c[1]) * z + c[2]) * z + c[3];
    let seed = C::new(0.4, 0.9);
    let mut z = [seed, seed * seed, seed * seed * seed, seed * seed * seed * seed];
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..4 {
            let mut denom = C::new(1.0, 0.0);
            for j in 0..4 {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = p(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-16 {
            break;
        }
    }
    z
}

/// Real parts of the eigenvalues, ascending.
pub fn real_spectrum(a: &CMatrix4) -> [f64; 4] {
    let mut v = quartic_roots(&char_poly(a)).map(|z| z.re);
    v.sort_by(f64::total_cmp);
    v
}

/// Wootters concurrence from the non-Hermitian product ρρ̃.
pub fn concurrence_oracle(rho: &DensityMatrix) -> f64 {
    let yy = qtele_core::numkernel::pauli_pair(2, 2);
    let r = *rho.matrix() * yy * rho.matrix().conj() * yy;
    let mut s = real_spectrum(&r).map(|x| x.max(0.0).sqrt());
    s.sort_by(|a, b| b.total_cmp(a));
    (s[0] - s[1] - s[2] - s[3]).max(0.0)
}

pub fn negativity_oracle(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let pt = CMatrix4::from_fn(|i, j| {
        let (a, b) = (i / 2, i % 2);
        let (c, d) = (j / 2, j % 2);
        m[(2 * a + d, 2 * c + b)]
    });
    (-2.0 * real_spectrum(&pt)[0]).max(0.0)
}

/// Singular values of a real 3×3 matrix, descending, from the eigenvalues of
/// AᵀA via the trigonometric cubic formula.
pub fn singular_values(a: &[[f64; 3]; 3]) -> [f64; 3] {
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = (0..3).map(|k| a[k][i] * a[k][j]).sum();
        }
    }
    let p1 = g[0][1].powi(2) + g[0][2].powi(2) + g[1][2].powi(2);
    let q = (g[0][0] + g[1][1] + g[2][2]) / 3.0;
    let p2 = (g[0][0] - q).powi(2) + (g[1][1] - q).powi(2) + (g[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut ev = if p < 1e-300 {
        [q; 3]
    } else {
        let mut b = g;
        for (i, row) in b.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (*x - if i == j { q } else { 0.0 }) / p;
            }
        }
        let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
            - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
            + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
        let phi = (det / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
        let e1 = q + 2.0 * p * phi.cos();
        let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
        [e1, 3.0 * q - e1 - e3, e3]
    };
    ev.sort_by(|a, b| b.total_cmp(a));
    ev.map(|x| x.max(0.0).sqrt())
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    (0..m)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=m {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Product rule on the sphere: Gauss–Legendre in cos θ, uniform in φ.
/// Exact for polynomials of degree < 2m.
pub fn product_rule(m: usize) -> Vec<([f64; 3], f64)> {
    let nphi = 2 * m;
    let mut out = Vec::new();
    for (z, w) in gauss_legendre(m) {
        let rho = (1.0 - z * z).sqrt();
        for k in 0..nphi {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / nphi as f64;
            out.push(([rho * phi.cos(), rho * phi.sin(), z], w / 2.0 / nphi as f64));
        }
    }
    out
}

/// (mean, deviation) of the per-input fidelity using the explicit 8×8
/// channel and a product quadrature rule.
pub fn channel_moments(proto: &TeleportProtocol, rho: &DensityMatrix) -> (f64, f64) {
    let rule = product_rule(4);
    let fs: Vec<(f64, f64)> = rule
        .iter()
        .map(|(n, w)| (proto.channel(rho, &BlochInput::normalized(*n).unwrap()).1, *w))
        .collect();
    let mean: f64 = fs.iter().map(|(f, w)| f * w).sum();
    let var: f64 = fs.iter().map(|(f, w)| w * (f - mean).powi(2)).sum();
    (mean, var.max(0.0).sqrt())
}

/// Concurrence of a pure state from its amplitudes.
pub fn pure_concurrence(psi: &[C; 4]) -> f64 {
    2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm()
}

/// A reproducible mixed bag of states: Ginibre, Haar-pure and noisy pure.
pub fn state_bag(seed: u64, n: usize) -> Vec<DensityMatrix> {
    let mut s = StateSampler::new(seed);
    (0..n)
        .map(|i| match i % 3 {
            0 => s.sample(SampleKind::GinibreMixed),
            1 => s.sample(SampleKind::HaarPure),
            _ => {
                let pure = s.sample(SampleKind::HaarPure);
                let noise = s.sample(SampleKind::GinibreMixed);
                let p = s.uniform(0.0, 1.0);
                pure.mix(&noise, p).unwrap()
            }
        })
        .collect()
}
