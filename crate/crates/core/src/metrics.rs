//! Maximal teleportation fidelity F and fidelity deviation Δ from the
//! canonical correlation magnitudes.
//!
//! | det T   | F                                   | Δ                                                       |
//! |---------|-------------------------------------|---------------------------------------------------------|
//! | < 0, = 0 | ½(1 + ⅓ Σ t_i)                     | (1/3√10) √(Σ_{i<j} (t_i − t_j)²)                        |
//! | > 0     | ½(1 + ⅓ max (t_i + t_j − t_k))       | min (1/3√10) √((t_i − t_j)² + (t_i + t_k)² + (t_j + t_k)²) |
//!
//! The extrema in the last row run over the choice of k.

use serde::Serialize;

use crate::canonical::{canonicalize, CanonicalForm, DetClass};
use crate::qstate::DensityMatrix;

/// Classical bound on the average fidelity of a qubit channel.
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;
/// Δ below this counts as zero.
pub const UNIVERSAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TeleportMetrics {
    pub f_max: f64,
    pub delta: f64,
    pub det_class: DetClass,
    pub useful: bool,
    pub universal: bool,
}

fn deviation_scale() -> f64 {
    1.0 / (3.0 * 10f64.sqrt())
}

/// F for the given magnitudes (any order) and determinant class.
pub fn fidelity_from_magnitudes(t: &[f64; 3], det_class: DetClass) -> f64 {
    match det_class {
        DetClass::Negative | DetClass::Zero => 0.5 * (1.0 + t.iter().sum::<f64>() / 3.0),
        DetClass::Positive => {
            let best = (0..3)
                .map(|k| positive_class_sum(t, k))
                .fold(f64::NEG_INFINITY, f64::max);
            0.5 * (1.0 + best / 3.0)
        }
    }
}

/// Δ for the given magnitudes (any order) and determinant class.
pub fn deviation_from_magnitudes(t: &[f64; 3], det_class: DetClass) -> f64 {
    match det_class {
        DetClass::Negative | DetClass::Zero => {
            let s = (t[0] - t[1]).powi(2) + (t[0] - t[2]).powi(2) + (t[1] - t[2]).powi(2);
            deviation_scale() * s.sqrt()
        }
        DetClass::Positive => (0..3)
            .map(|k| positive_class_deviation(t, k))
            .fold(f64::INFINITY, f64::min),
    }
}

/// t_i + t_j − t_k with k the index carrying λ = +1.
fn positive_class_sum(t: &[f64; 3], k: usize) -> f64 {
    t.iter().sum::<f64>() - 2.0 * t[k]
}

fn positive_class_deviation(t: &[f64; 3], k: usize) -> f64 {
    let (i, j) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let s = (t[i] - t[j]).powi(2) + (t[i] + t[k]).powi(2) + (t[j] + t[k]).powi(2);
    deviation_scale() * s.sqrt()
}

pub fn max_fidelity(c: &CanonicalForm) -> f64 {
    let f = fidelity_from_magnitudes(&c.t_abs, c.det_class);
    if c.det_class == DetClass::Positive {
        // t_abs is sorted, so the optimum puts λ = +1 on the smallest
        let sorted = 0.5 * (1.0 + positive_class_sum(&c.t_abs, 2) / 3.0);
        debug_assert!((f - sorted).abs() < 1e-12, "permutation max disagrees with sorted order");
    }
    f
}

pub fn fidelity_deviation(c: &CanonicalForm) -> f64 {
    let d = deviation_from_magnitudes(&c.t_abs, c.det_class);
    if c.det_class == DetClass::Positive {
        let sorted = positive_class_deviation(&c.t_abs, 2);
        debug_assert!((d - sorted).abs() < 1e-12, "permutation min disagrees with sorted order");
    }
    d
}

pub fn metrics_of(c: &CanonicalForm) -> TeleportMetrics {
    let f_max = max_fidelity(c);
    let delta = fidelity_deviation(c);
    TeleportMetrics {
        f_max,
        delta,
        det_class: c.det_class,
        useful: f_max > CLASSICAL_FIDELITY,
        universal: delta < UNIVERSAL_TOL,
    }
}

pub fn assess(rho: &DensityMatrix) -> TeleportMetrics {
    metrics_of(&canonicalize(rho))
}
