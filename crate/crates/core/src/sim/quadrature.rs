//! Equal-weight spherical designs and exact sphere moments.

use crate::error::{Error, Result};
use crate::numkernel::Vector3;

use super::channel::BlochInput;

/// Tolerance used when validating a rule against exact moments.
pub const MOMENT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<BlochInput>,
    weights: Vec<f64>,
    design_strength: u32,
}

impl QuadratureRule {
    /// A rule claiming to integrate every spherical polynomial of degree
    /// ≤ `design_strength` exactly. The claim is checked against the exact
    /// monomial averages.
    pub fn new(nodes: Vec<BlochInput>, weights: Vec<f64>, design_strength: u32) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::PreconditionFailed(
                "quadrature needs one weight per node".into(),
            ));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::PreconditionFailed("weights must be positive".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > MOMENT_TOL {
            return Err(Error::PreconditionFailed(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        let rule = QuadratureRule {
            nodes,
            weights,
            design_strength,
        };
        let err = rule.max_moment_error(design_strength);
        if err > MOMENT_TOL {
            return Err(Error::PreconditionFailed(format!(
                "rule is not a {design_strength}-design (moment error {err:.3e})"
            )));
        }
        Ok(rule)
    }

    fn equal_weight(points: &[Vector3], strength: u32) -> Self {
        let nodes: Vec<BlochInput> = points
            .iter()
            .map(|p| BlochInput::normalized(*p).expect("nonzero vertex"))
            .collect();
        let w = 1.0 / nodes.len() as f64;
        let weights = vec![w; nodes.len()];
        Self::new(nodes, weights, strength).expect("built-in design is valid")
    }

    /// The 12 vertices of the icosahedron, a 5-design. The default rule.
    pub fn icosahedron() -> Self {
        let g = (1.0 + 5f64.sqrt()) / 2.0;
        let mut pts = Vec::with_capacity(12);
        for a in [-1.0, 1.0] {
            for b in [-g, g] {
                pts.push([0.0, a, b]);
                pts.push([a, b, 0.0]);
                pts.push([b, 0.0, a]);
            }
        }
        Self::equal_weight(&pts, 5)
    }

    /// The six points ±e_i, a 3-design.
    pub fn octahedron() -> Self {
        let mut pts = Vec::with_capacity(6);
        for i in 0..3 {
            for s in [-1.0, 1.0] {
                let mut p = [0.0; 3];
                p[i] = s;
                pts.push(p);
            }
        }
        Self::equal_weight(&pts, 3)
    }

    /// The four tetrahedron vertices, a 2-design.
    pub fn tetrahedron() -> Self {
        let pts = [
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ];
        Self::equal_weight(&pts, 2)
    }

    pub fn nodes(&self) -> &[BlochInput] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn design_strength(&self) -> u32 {
        self.design_strength
    }

    /// Σ w_k g(n_k)
    pub fn integrate(&self, mut g: impl FnMut(&Vector3) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(n, w)| w * g(n.n()))
            .sum()
    }

    /// Largest error over all monomials x^a y^b z^c with a + b + c ≤ degree.
    pub fn max_moment_error(&self, degree: u32) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..=degree {
            for b in 0..=degree - a {
                for c in 0..=degree - a - b {
                    let q = self.integrate(|n| {
                        n[0].powi(a as i32) * n[1].powi(b as i32) * n[2].powi(c as i32)
                    });
                    worst = worst.max((q - sphere_monomial_average(a, b, c)).abs());
                }
            }
        }
        worst
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::icosahedron()
    }
}

fn double_factorial_odd(k: i64) -> f64 {
    // (k)!! for odd k ≥ -1
    let mut out = 1.0;
    let mut j = k;
    while j > 1 {
        out *= j as f64;
        j -= 2;
    }
    out
}

/// Average of x^a y^b z^c over the unit sphere:
/// (a−1)!!(b−1)!!(c−1)!!/(a+b+c+1)!! when all exponents are even, else 0.
pub fn sphere_monomial_average(a: u32, b: u32, c: u32) -> f64 {
    if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
        return 0.0;
    }
    let (a, b, c) = (i64::from(a), i64::from(b), i64::from(c));
    double_factorial_odd(a - 1) * double_factorial_odd(b - 1) * double_factorial_odd(c - 1)
        / double_factorial_odd(a + b + c + 1)
}
