//! Mean and spread of the per-input fidelity over uniformly distributed pure
//! inputs.

use serde::Serialize;

use crate::canonical::canonicalize;
use crate::error::{Error, Result};
use crate::qstate::{DensityMatrix, StateSampler};

use super::channel::{BlochChannel, TeleportProtocol};
use super::quadrature::QuadratureRule;

/// f is quadratic in n, so f² needs a design of this strength.
pub const REQUIRED_STRENGTH: u32 = 4;
pub const MIN_MC_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StatsMethod {
    DesignExact { strength: u32 },
    MonteCarlo { n_samples: usize, std_error: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FidelityStats {
    pub mean: f64,
    pub second_moment: f64,
    pub deviation: f64,
    pub method: StatsMethod,
}

/// Exact ⟨f⟩ and ⟨f²⟩ for the standard protocol.
pub fn fidelity_stats(resource: &DensityMatrix, rule: &QuadratureRule) -> Result<FidelityStats> {
    fidelity_stats_with(&TeleportProtocol::standard(), resource, rule)
}

pub fn fidelity_stats_with(
    protocol: &TeleportProtocol,
    resource: &DensityMatrix,
    rule: &QuadratureRule,
) -> Result<FidelityStats> {
    if rule.design_strength() < REQUIRED_STRENGTH {
        return Err(Error::DesignTooWeak {
            strength: rule.design_strength(),
            required: REQUIRED_STRENGTH,
        });
    }
    let map = BlochChannel::of(protocol, resource);
    let mean = rule.integrate(|n| map.fidelity(n));
    let second_moment = rule.integrate(|n| map.fidelity(n).powi(2));
    // centred second pass; ⟨f²⟩ − ⟨f⟩² loses everything below ~1e-8
    let variance = rule.integrate(|n| (map.fidelity(n) - mean).powi(2));
    Ok(FidelityStats {
        mean,
        second_moment,
        deviation: variance.max(0.0).sqrt(),
        method: StatsMethod::DesignExact {
            strength: rule.design_strength(),
        },
    })
}

/// Fidelity statistics of the optimal strategy: bring ρ to canonical form with
/// local unitaries, then teleport keyed to the singlet.
pub fn optimal_protocol_stats(rho: &DensityMatrix, rule: &QuadratureRule) -> Result<FidelityStats> {
    let c = canonicalize(rho);
    fidelity_stats_with(&TeleportProtocol::singlet(), &c.apply_to(rho), rule)
}

/// Monte-Carlo estimate for the standard protocol.
pub fn fidelity_stats_mc(resource: &DensityMatrix, n_samples: usize, seed: u64) -> Result<FidelityStats> {
    fidelity_stats_mc_with(&TeleportProtocol::standard(), resource, n_samples, seed)
}

pub fn fidelity_stats_mc_with(
    protocol: &TeleportProtocol,
    resource: &DensityMatrix,
    n_samples: usize,
    seed: u64,
) -> Result<FidelityStats> {
    if n_samples < MIN_MC_SAMPLES {
        return Err(Error::PreconditionFailed(format!(
            "Monte-Carlo needs at least {MIN_MC_SAMPLES} samples, got {n_samples}"
        )));
    }
    let map = BlochChannel::of(protocol, resource);
    let mut sampler = StateSampler::new(seed);
    let f: Vec<f64> = (0..n_samples)
        .map(|_| map.fidelity(&sampler.unit_vector()))
        .collect();
    let n = n_samples as f64;
    let mean = f.iter().sum::<f64>() / n;
    let second_moment = f.iter().map(|x| x * x).sum::<f64>() / n;
    let ss: f64 = f.iter().map(|x| (x - mean).powi(2)).sum();
    let std_error = (ss / (n - 1.0)).sqrt() / n.sqrt();
    Ok(FidelityStats {
        mean,
        second_moment,
        deviation: (ss / n).sqrt(),
        method: StatsMethod::MonteCarlo {
            n_samples,
            std_error,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{canonical_state, CanonicalForm, DetClass};
    use crate::qstate::{make_bell, make_werner};

    #[test]
    fn phi_plus_is_perfect() {
        let s = fidelity_stats(&make_bell(1).unwrap(), &QuadratureRule::default()).unwrap();
        assert!((s.mean - 1.0).abs() < 1e-14 && s.deviation < 1e-7);
    }

    #[test]
    fn canonical_werner() {
        let rule = QuadratureRule::default();
        for p in [0.2, 0.6, 1.0] {
            let c = CanonicalForm::from_parameters([0.0; 3], [0.0; 3], [p; 3], DetClass::Negative);
            let rho = canonical_state(&c).unwrap();
            let s = fidelity_stats_with(&TeleportProtocol::singlet(), &rho, &rule).unwrap();
            assert!((s.mean - (1.0 + p) / 2.0).abs() < 1e-12);
            assert!(s.deviation < 1e-12);
            let s = optimal_protocol_stats(&make_werner(p).unwrap(), &rule).unwrap();
            assert!((s.mean - (1.0 + p) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_canonical_deviation() {
        let rule = QuadratureRule::default();
        for conc in [0.1f64, 0.5, 0.9] {
            // a|00⟩ + b|11⟩ with 2ab = conc; canonical |t_ii| = (1, conc, conc)
            let a = ((1.0 + (1.0 - conc * conc).sqrt()) / 2.0).sqrt();
            let rho = crate::qstate::make_pure_schmidt(a).unwrap();
            let s = optimal_protocol_stats(&rho, &rule).unwrap();
            let expect = (1.0 - conc) * 2f64.sqrt() / (3.0 * 10f64.sqrt());
            assert!((s.deviation - expect).abs() < 1e-9, "{} vs {expect}", s.deviation);
            assert!((s.mean - (2.0 + conc) / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn weak_design_rejected() {
        let r = fidelity_stats(&make_bell(1).unwrap(), &QuadratureRule::octahedron());
        assert!(matches!(r, Err(Error::DesignTooWeak { strength: 3, required: 4 })));
    }

    #[test]
    fn monte_carlo() {
        let s = fidelity_stats_mc(&make_bell(1).unwrap(), 10_000, 1).unwrap();
        assert!((s.mean - 1.0).abs() < 1e-14);

        let w = make_werner(0.9).unwrap();
        let a = fidelity_stats_mc(&w, 1000, 42).unwrap();
        let b = fidelity_stats_mc(&w, 1000, 42).unwrap();
        assert_eq!(a, b);
        assert!(fidelity_stats_mc(&w, 99, 1).is_err());
    }
}
