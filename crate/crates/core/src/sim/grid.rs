//! Exhaustive grid searches for the largest Σ|t_ii| under a fixed linear
//! entropy or CHSH value.
//!
//! Both searches scan angles in the first quadrant only. Other quadrants
//! reproduce the same magnitudes |t_ii| up to sign and add nothing.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkernel::Vector3;
use crate::optimal::PropertyKind;

pub const DEFAULT_RESOLUTION: usize = 2000;
pub const MIN_RESOLUTION: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearEntropyGrid {
    pub best_t_abs: Vector3,
    pub best_sum: f64,
    /// (θ, φ) of the grid maximum.
    pub argmax_angles: (f64, f64),
    /// Spacing of the angle grid.
    pub cell: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChshGrid {
    pub best_t_abs: Vector3,
    pub best_sum: f64,
    pub argmax_theta: f64,
    pub cell: f64,
}

fn check_resolution(resolution: usize) -> Result<()> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::PreconditionFailed(format!(
            "grid resolution must be at least {MIN_RESOLUTION}, got {resolution}"
        )));
    }
    Ok(())
}

/// Interior grid points k·h, k = 1..res−1, of (0, π/2) with h = (π/2)/res.
fn quarter_grid(resolution: usize) -> (f64, impl Iterator<Item = f64>) {
    let h = FRAC_PI_2 / resolution as f64;
    (h, (1..resolution).map(move |k| k as f64 * h))
}

/// Maximizes |t₁| + |t₂| + |t₃| with Σ t_i² = 3(1 − l), writing
/// t = A(sinθ cosφ, sinθ sinφ, cosθ).
pub fn grid_verify_linear_entropy_optimum(l: f64, resolution: usize) -> Result<LinearEntropyGrid> {
    PropertyKind::LinearEntropy.check_range(l)?;
    check_resolution(resolution)?;
    let radius = (3.0 * (1.0 - l)).sqrt();
    let (h, thetas) = quarter_grid(resolution);
    let phis: Vec<(f64, f64, f64)> = quarter_grid(resolution)
        .1
        .map(|p| (p, p.cos(), p.sin()))
        .collect();

    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for th in thetas {
        let (st, ct) = (th.sin(), th.cos());
        for &(ph, cp, sp) in &phis {
            let v = st * (cp + sp) + ct;
            if v > best.0 {
                best = (v, th, ph);
            }
        }
    }
    let (_, th, ph) = best;
    let t = [
        radius * th.sin() * ph.cos(),
        radius * th.sin() * ph.sin(),
        radius * th.cos(),
    ];
    Ok(LinearEntropyGrid {
        best_t_abs: t,
        best_sum: t.iter().sum(),
        argmax_angles: (th, ph),
        cell: h,
    })
}

/// Σ for the constrained pair (√M cosθ, √M sinθ) with the third magnitude at
/// its largest admissible value min(pair).
pub fn chsh_pair_sum(m: f64, theta: f64) -> f64 {
    let (a, b) = (m.sqrt() * theta.cos(), m.sqrt() * theta.sin());
    a + b + a.min(b)
}

/// Maximizes |t₁| + |t₂| + |t₃| with |t₁|² + |t₂|² = M = b²/4 and
/// |t₃| ≤ min(|t₁|, |t₂|).
pub fn grid_verify_chsh_optimum(b: f64, resolution: usize) -> Result<ChshGrid> {
    PropertyKind::ChshB.check_range(b)?;
    check_resolution(resolution)?;
    let root_m = b / 2.0;
    let (h, thetas) = quarter_grid(resolution);

    let mut best = (f64::NEG_INFINITY, [0.0; 3], 0.0);
    for th in thetas {
        let (t1, t2) = (root_m * th.cos(), root_m * th.sin());
        let cap = t1.min(t2);
        for k in 0..=resolution {
            let t3 = cap * k as f64 / resolution as f64;
            let v = t1 + t2 + t3;
            if v > best.0 {
                best = (v, [t1, t2, t3], th);
            }
        }
    }
    Ok(ChshGrid {
        best_t_abs: best.1,
        best_sum: best.0,
        argmax_theta: best.2,
        cell: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn linear_entropy_grid() {
        let g = grid_verify_linear_entropy_optimum(0.0, 1000).unwrap();
        assert!((g.best_sum - 3.0).abs() < 1e-4);
        assert!(g.best_t_abs.iter().all(|t| (t - 1.0).abs() < 1e-2));
        let g = grid_verify_linear_entropy_optimum(0.75, 500).unwrap();
        assert!((g.best_sum - 1.5).abs() < 1e-4);
        assert!((g.argmax_angles.0 - 2f64.sqrt().atan()).abs() <= g.cell);
        assert!((g.argmax_angles.1 - FRAC_PI_4).abs() <= g.cell);
        assert!(grid_verify_linear_entropy_optimum(0.9, 500).is_err());
        assert!(grid_verify_linear_entropy_optimum(0.5, 10).is_err());
    }

    #[test]
    fn chsh_grid() {
        let g = grid_verify_chsh_optimum(2.0 * SQRT_2, 400).unwrap();
        assert!((g.best_sum - 3.0).abs() < 1e-9);
        let g = grid_verify_chsh_optimum(2.2, 400).unwrap();
        assert!(g.best_t_abs.iter().all(|t| (t - 2.2 / (2.0 * SQRT_2)).abs() < 1e-9));
        assert!((g.argmax_theta - FRAC_PI_4).abs() <= g.cell);
        assert!(grid_verify_chsh_optimum(2.0, 400).is_err());
    }

    #[test]
    fn quarter_turn_beats_sixth() {
        for m in [1.01, 1.3, 1.7, 2.0] {
            assert!(chsh_pair_sum(m, FRAC_PI_4) > chsh_pair_sum(m, std::f64::consts::FRAC_PI_6));
        }
    }
}
