//! Optimal-state families for fixed linear entropy, CHSH value or concurrence,
//! and certification of whether a given state attains the largest maximal
//! fidelity for its property value.

use std::fmt;

use serde::Serialize;

use crate::canonical::{canonical_state, canonicalize, CanonicalForm, DetClass};
use crate::error::{Error, Result};
use crate::metrics::{metrics_of, CLASSICAL_FIDELITY};
use crate::numkernel::{inner, kron, norm, vec_norm, CMatrix4, CVector, SpinUnitary, Vector3, C64};
use crate::properties::{chsh, concurrence, linear_entropy, min_pt_eigenpair};
use crate::qstate::{bloch_vector, partial_transpose, reduced_state, BellState, DensityMatrix};

/// Allowed gap between a claimed property value and the measured one.
pub const PROPERTY_MATCH_TOL: f64 = 1e-6;
/// Tolerance for the optimality and saturation conditions.
pub const CONDITION_TOL: f64 = 1e-7;
/// Eigen-equation residual accepted by the covariance check.
pub const COVARIANCE_TOL: f64 = 1e-8;

/// Concurrence at or below this counts as separable.
const ENTANGLEMENT_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    LinearEntropy,
    ChshB,
    Concurrence,
}

impl PropertyKind {
    pub const ALL: [PropertyKind; 3] = [
        PropertyKind::LinearEntropy,
        PropertyKind::ChshB,
        PropertyKind::Concurrence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyKind::LinearEntropy => "linear_entropy",
            PropertyKind::ChshB => "chsh_b",
            PropertyKind::Concurrence => "concurrence",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            PropertyKind::LinearEntropy => "L",
            PropertyKind::ChshB => "B",
            PropertyKind::Concurrence => "C",
        }
    }

    pub fn interval(self) -> &'static str {
        match self {
            PropertyKind::LinearEntropy => "[0, 8/9)",
            PropertyKind::ChshB => "(2, 2√2]",
            PropertyKind::Concurrence => "(0, 1]",
        }
    }

    pub fn admits(self, v: f64) -> bool {
        v.is_finite()
            && match self {
                PropertyKind::LinearEntropy => (0.0..8.0 / 9.0).contains(&v),
                PropertyKind::ChshB => v > 2.0 && v <= 2.0 * std::f64::consts::SQRT_2,
                PropertyKind::Concurrence => v > 0.0 && v <= 1.0,
            }
    }

    pub fn check_range(self, v: f64) -> Result<()> {
        if self.admits(v) {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                name: self.symbol(),
                value: v,
                interval: self.interval(),
            })
        }
    }

    /// The property measured on a state.
    pub fn measure(self, rho: &DensityMatrix) -> f64 {
        match self {
            PropertyKind::LinearEntropy => linear_entropy(rho),
            PropertyKind::ChshB => chsh(rho).b,
            PropertyKind::Concurrence => concurrence(rho),
        }
    }

    /// Common |t_ii| of the optimal family member.
    pub fn optimal_magnitude(self, v: f64) -> f64 {
        match self {
            PropertyKind::LinearEntropy => (1.0 - v).sqrt(),
            PropertyKind::ChshB => v / (2.0 * std::f64::consts::SQRT_2),
            PropertyKind::Concurrence => (2.0 * v + 1.0) / 3.0,
        }
    }

    /// Largest maximal fidelity among states with property value `v`.
    pub fn largest_max_fidelity(self, v: f64) -> f64 {
        match self {
            PropertyKind::LinearEntropy => 0.5 * (1.0 + (1.0 - v).sqrt()),
            PropertyKind::ChshB => 0.5 * (1.0 + v / (2.0 * std::f64::consts::SQRT_2)),
            PropertyKind::Concurrence => (2.0 + v) / 3.0,
        }
    }

    fn constraint(self) -> LocalVectorConstraint {
        match self {
            PropertyKind::LinearEntropy => LocalVectorConstraint::MustBeZero,
            PropertyKind::ChshB => LocalVectorConstraint::Unconstrained,
            PropertyKind::Concurrence => LocalVectorConstraint::RPlusSZero,
        }
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalVectorConstraint {
    MustBeZero,
    Unconstrained,
    RPlusSZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OptimalFamilySpec {
    pub kind: PropertyKind,
    pub value: f64,
    pub t_abs_target: Vector3,
    pub f_largest: f64,
    pub local_vector_constraint: LocalVectorConstraint,
}

impl OptimalFamilySpec {
    fn new(kind: PropertyKind, value: f64) -> Self {
        let t = kind.optimal_magnitude(value);
        let spec = OptimalFamilySpec {
            kind,
            value,
            t_abs_target: [t; 3],
            f_largest: kind.largest_max_fidelity(value),
            local_vector_constraint: kind.constraint(),
        };
        debug_assert!(spec.f_largest > CLASSICAL_FIDELITY);
        spec
    }

    fn canonical_with(&self, r: Vector3, s: Vector3) -> CanonicalForm {
        CanonicalForm::from_parameters(r, s, self.t_abs_target, DetClass::Negative)
    }
}

/// ¼(I⊗I − √(1−l) Σ σ_i⊗σ_i)
pub fn optimal_for_linear_entropy(l: f64) -> Result<(OptimalFamilySpec, DensityMatrix)> {
    PropertyKind::LinearEntropy.check_range(l)?;
    let spec = OptimalFamilySpec::new(PropertyKind::LinearEntropy, l);
    let rho = canonical_state(&spec.canonical_with([0.0; 3], [0.0; 3]))?;
    Ok((spec, rho))
}

/// Canonical representative with r = s = 0 and |t_ii| = b/(2√2).
pub fn optimal_for_chsh(b: f64) -> Result<(OptimalFamilySpec, DensityMatrix)> {
    PropertyKind::ChshB.check_range(b)?;
    let spec = OptimalFamilySpec::new(PropertyKind::ChshB, b);
    let rho = canonical_state(&spec.canonical_with([0.0; 3], [0.0; 3]))?;
    Ok((spec, rho))
}

/// Canonical state with |t_ii| = (2c+1)/3 and local vectors r, s = −r
/// (r = 0 when not given). Fails with `NotPositive` if the chosen r does not
/// give a state.
pub fn optimal_for_concurrence(
    c: f64,
    r: Option<Vector3>,
) -> Result<(OptimalFamilySpec, DensityMatrix)> {
    PropertyKind::Concurrence.check_range(c)?;
    let spec = OptimalFamilySpec::new(PropertyKind::Concurrence, c);
    let r = r.unwrap_or([0.0; 3]);
    if !r.iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let rho = canonical_state(&spec.canonical_with(r, r.map(|x| -x)))?;
    Ok((spec, rho))
}

pub fn construct_optimal(
    kind: PropertyKind,
    value: f64,
    r: Option<Vector3>,
) -> Result<(OptimalFamilySpec, DensityMatrix)> {
    match kind {
        PropertyKind::LinearEntropy => optimal_for_linear_entropy(value),
        PropertyKind::ChshB => optimal_for_chsh(value),
        PropertyKind::Concurrence => optimal_for_concurrence(value, r),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimalityWitness {
    pub measured_value: f64,
    pub t_abs: Vector3,
    pub t_abs_target: Vector3,
    /// max_i | |t_ii| − target |, or |Σ|t_ii| − (2C+1)| for concurrence.
    pub condition_residual: f64,
    pub det_class: DetClass,
    pub f_max: f64,
    pub f_largest: f64,
    pub delta: f64,
    /// Conditions that failed, empty when optimal.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimalityVerdict {
    pub is_largest_max_fidelity: bool,
    pub is_zero_deviation: bool,
    pub is_optimal: bool,
    pub witness: OptimalityWitness,
}

/// Decides whether `rho` attains the largest maximal fidelity for the claimed
/// property value, and whether it does so with zero deviation.
pub fn check_optimal(rho: &DensityMatrix, kind: PropertyKind, value: f64) -> Result<OptimalityVerdict> {
    kind.check_range(value)?;
    let measured = kind.measure(rho);
    if (measured - value).abs() > PROPERTY_MATCH_TOL {
        return Err(Error::MismatchedProperty {
            property: kind.name(),
            claimed: value,
            measured,
        });
    }

    let c = canonicalize(rho);
    let m = metrics_of(&c);
    let target = kind.optimal_magnitude(value);
    let mut failures = Vec::new();

    let (residual, largest) = match kind {
        PropertyKind::LinearEntropy | PropertyKind::ChshB => {
            let res = c
                .t_abs
                .iter()
                .map(|t| (t - target).abs())
                .fold(0.0, f64::max);
            let ok = res < CONDITION_TOL && c.det_class == DetClass::Negative;
            if res >= CONDITION_TOL {
                failures.push(format!("|t_ii| differ from {target:.12} by up to {res:.3e}"));
            } else if c.det_class != DetClass::Negative {
                failures.push(format!("det T is {:?}, not negative", c.det_class).to_lowercase());
            }
            (res, ok)
        }
        PropertyKind::Concurrence => {
            let res = (c.t_sum() - (2.0 * value + 1.0)).abs();
            let ok = res < CONDITION_TOL;
            if !ok {
                failures.push(format!("sum of |t_ii| differs from 2C+1 by {res:.3e}"));
            }
            (res, ok)
        }
    };

    let zero_dev = m.delta < CONDITION_TOL;
    if !zero_dev {
        failures.push(format!("deviation nonzero ({:.3e})", m.delta));
    }

    Ok(OptimalityVerdict {
        is_largest_max_fidelity: largest,
        is_zero_deviation: zero_dev,
        is_optimal: largest && zero_dev,
        witness: OptimalityWitness {
            measured_value: measured,
            t_abs: c.t_abs,
            t_abs_target: [target; 3],
            condition_residual: residual,
            det_class: c.det_class,
            f_max: m.f_max,
            f_largest: kind.largest_max_fidelity(value),
            delta: m.delta,
            failures,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationReport {
    pub saturates: bool,
    pub concurrence: f64,
    pub lambda_min: f64,
    #[serde(skip)]
    pub eigenvector: CVector<4>,
    pub eigvec_max_entangled: bool,
    /// Trace distances of the eigenvector's two reductions from I/2.
    pub reduction_distances: [f64; 2],
    /// |λ_min + C/2|
    pub residual_concurrence: f64,
    /// |λ_min + ¼(Σ|t_ii| − 1)|
    pub residual_correlations: f64,
    pub t_sum: f64,
    pub r_plus_s_norm: f64,
    pub degenerate: bool,
    /// Local-vector prediction of saturation; `None` for degenerate canonical
    /// forms, where r and s are not unique.
    pub local_vector_prediction: Option<bool>,
}

fn pure_reductions(v: &CVector<4>) -> [f64; 2] {
    let p = CMatrix4::outer(v, v);
    [true, false].map(|first| 0.5 * norm(&bloch_vector(&reduced_state(&p, first))))
}

/// Whether the negative eigenvector of ρ^Γ is maximally entangled, which is
/// the case exactly when the fidelity reaches (2 + C)/3.
pub fn check_fidelity_concurrence_saturation(rho: &DensityMatrix) -> Result<SaturationReport> {
    let conc = concurrence(rho);
    if conc <= ENTANGLEMENT_FLOOR {
        return Err(Error::NotEntangled { concurrence: conc });
    }
    let (lambda_min, eigenvector) = min_pt_eigenpair(rho);
    let reduction_distances = pure_reductions(&eigenvector);
    let max_ent = reduction_distances.iter().all(|d| *d < CONDITION_TOL);

    let c = canonicalize(rho);
    let rs: Vector3 = std::array::from_fn(|i| c.r[i] + c.s[i]);
    let r_plus_s_norm = norm(&rs);
    let prediction = (!c.degenerate).then(|| {
        r_plus_s_norm < CONDITION_TOL && c.det_class == DetClass::Negative && c.t_sum() > 1.0
    });

    Ok(SaturationReport {
        saturates: max_ent,
        concurrence: conc,
        lambda_min,
        eigenvector,
        eigvec_max_entangled: max_ent,
        reduction_distances,
        residual_concurrence: (lambda_min + conc / 2.0).abs(),
        residual_correlations: (lambda_min + 0.25 * (c.t_sum() - 1.0)).abs(),
        t_sum: c.t_sum(),
        r_plus_s_norm,
        degenerate: c.degenerate,
        local_vector_prediction: prediction,
    })
}

/// ‖ρ^Γ v − λ v‖
pub fn pt_eigen_residual(rho: &DensityMatrix, lambda: f64, v: &CVector<4>) -> f64 {
    let pt = partial_transpose(rho);
    let w = pt.mul_vec(v);
    let diff: CVector<4> = std::array::from_fn(|i| w[i] - v[i] * lambda);
    vec_norm(&diff)
}

/// Eigenvector of ((U⊗V)ρ(U⊗V)†)^Γ predicted from that of ρ^Γ.
///
/// The partial transpose turns the second factor V into its complex
/// conjugate, so the image is (U⊗V*)|Ψ⟩.
pub fn covariant_eigenvector(v: &CVector<4>, u: &SpinUnitary, w: &SpinUnitary) -> CVector<4> {
    kron(u.matrix(), &w.matrix().conj()).mul_vec(v)
}

/// Checks that a local unitary maps the saturating PT eigenpair of ρ onto
/// one of the transformed state, with λ_min unchanged.
pub fn unitary_covariance_check(rho: &DensityMatrix, u: &SpinUnitary, v: &SpinUnitary) -> Result<bool> {
    let rep = check_fidelity_concurrence_saturation(rho)?;
    if !rep.saturates {
        return Err(Error::PreconditionFailed(
            "state does not have a maximally entangled partial-transpose eigenvector".into(),
        ));
    }
    let rho2 = rho.local_transform(u.matrix(), v.matrix());
    let (lambda2, _) = min_pt_eigenpair(&rho2);
    let psi2 = covariant_eigenvector(&rep.eigenvector, u, v);
    let same_lambda = (lambda2 - rep.lambda_min).abs() < COVARIANCE_TOL;
    let maps = pt_eigen_residual(&rho2, rep.lambda_min, &psi2) < COVARIANCE_TOL;
    let still_max_ent = pure_reductions(&psi2).iter().all(|d| *d < CONDITION_TOL);
    Ok(same_lambda && maps && still_max_ent)
}

/// Coefficients ⟨B_k|v⟩ in the order Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
pub fn bell_coefficients(v: &CVector<4>) -> [C64; 4] {
    BellState::ALL.map(|b| inner(&b.vector(), v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::assess;
    use crate::qstate::{hs_decompose, make_pure_schmidt, make_werner, StateSampler};

    #[test]
    fn linear_entropy_family() {
        let (spec, rho) = optimal_for_linear_entropy(0.75).unwrap();
        assert!(spec.t_abs_target.iter().all(|t| (t - 0.5).abs() < 1e-15));
        assert!((assess(&rho).f_max - 0.75).abs() < 1e-12);
        assert!((linear_entropy(&rho) - 0.75).abs() < 1e-12);

        let (_, singlet) = optimal_for_linear_entropy(0.0).unwrap();
        assert!((assess(&singlet).f_max - 1.0).abs() < 1e-12);

        assert!(matches!(optimal_for_linear_entropy(8.0 / 9.0), Err(Error::OutOfRange { .. })));
        assert!(matches!(optimal_for_linear_entropy(-0.1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn chsh_family() {
        let (spec, rho) = optimal_for_chsh(2.2).unwrap();
        assert!((spec.t_abs_target[0] - 0.777_817_459_305_202).abs() < 1e-12);
        assert!((spec.f_largest - 0.888_908_729_652_601).abs() < 1e-12);
        assert!((chsh(&rho).b - 2.2).abs() < 1e-12);
        assert!(matches!(optimal_for_chsh(2.0), Err(Error::OutOfRange { .. })));
        assert!(matches!(optimal_for_chsh(2.9), Err(Error::OutOfRange { .. })));
        assert!(optimal_for_chsh(2.0 * std::f64::consts::SQRT_2).is_ok());
    }

    #[test]
    fn concurrence_family() {
        let (spec, rho) = optimal_for_concurrence(0.5, None).unwrap();
        assert!(spec.t_abs_target.iter().all(|t| (t - 2.0 / 3.0).abs() < 1e-15));
        assert!((spec.f_largest - 5.0 / 6.0).abs() < 1e-15);
        assert!((concurrence(&rho) - 0.5).abs() < 1e-9);

        let r = [0.1, 0.0, 0.0];
        let (_, rho) = optimal_for_concurrence(0.5, Some(r)).unwrap();
        assert!((concurrence(&rho) - 0.5).abs() < 1e-9);
        let f = hs_decompose(&rho);
        assert!((f.r[0] - 0.1).abs() < 1e-12 && (f.s[0] + 0.1).abs() < 1e-12);

        assert!(matches!(
            optimal_for_concurrence(0.5, Some([0.9, 0.0, 0.0])),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(optimal_for_concurrence(0.0, None), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn verdict_examples() {
        for p in [0.4, 0.8, 1.0] {
            let w = make_werner(p).unwrap();
            let v = check_optimal(&w, PropertyKind::Concurrence, (3.0 * p - 1.0) / 2.0).unwrap();
            assert!(v.is_optimal, "{v:?}");
            let v = check_optimal(&w, PropertyKind::LinearEntropy, 1.0 - p * p).unwrap();
            assert!(v.is_optimal);
        }

        let a = 0.4f64;
        let rho = make_pure_schmidt(a).unwrap();
        let c = 2.0 * a * (1.0 - a * a).sqrt();
        let v = check_optimal(&rho, PropertyKind::Concurrence, c).unwrap();
        assert!(v.is_largest_max_fidelity && !v.is_zero_deviation && !v.is_optimal);
        assert!(v.witness.failures.iter().any(|f| f.starts_with("deviation nonzero")));

        let w = make_werner(0.8).unwrap();
        assert!(matches!(
            check_optimal(&w, PropertyKind::Concurrence, 0.6),
            Err(Error::MismatchedProperty { .. })
        ));
    }

    #[test]
    fn saturation_examples() {
        for p in [0.5, 0.8] {
            let rep = check_fidelity_concurrence_saturation(&make_werner(p).unwrap()).unwrap();
            assert!(rep.saturates);
            assert!((rep.lambda_min + (3.0 * p - 1.0) / 4.0).abs() < 1e-12);
        }
        for a in [0.2, 0.5, 0.9] {
            let rep = check_fidelity_concurrence_saturation(&make_pure_schmidt(a).unwrap()).unwrap();
            assert!(rep.saturates);
            assert!(rep.residual_concurrence < 1e-7);
        }
        assert!(matches!(
            check_fidelity_concurrence_saturation(&DensityMatrix::maximally_mixed()),
            Err(Error::NotEntangled { .. })
        ));

        let c = CanonicalForm::from_parameters([0.2, 0.0, 0.0], [0.0; 3], [0.5, 0.4, 0.3], DetClass::Negative);
        let rho = canonical_state(&c).unwrap();
        let rep = check_fidelity_concurrence_saturation(&rho).unwrap();
        assert!(!rep.saturates);
        assert_eq!(rep.local_vector_prediction, Some(false));
        assert!(crate::properties::negativity(&rho) < rep.concurrence - 1e-6);
    }

    #[test]
    fn covariance() {
        let w = make_werner(0.8).unwrap();
        let mut s = StateSampler::new(3);
        for _ in 0..5 {
            let (u, v) = (s.spin_unitary(), s.spin_unitary());
            assert!(unitary_covariance_check(&w, &u, &v).unwrap());
        }
        let id = SpinUnitary::identity();
        assert!(unitary_covariance_check(&w, &id, &id).unwrap());
    }

    #[test]
    fn transpose_instead_of_conjugate_fails() {
        let rho = make_pure_schmidt(0.3).unwrap();
        let rep = check_fidelity_concurrence_saturation(&rho).unwrap();
        let mut s = StateSampler::new(11);
        let (u, v) = (s.spin_unitary(), s.spin_unitary());
        let rho2 = rho.local_transform(u.matrix(), v.matrix());
        let good = covariant_eigenvector(&rep.eigenvector, &u, &v);
        let bad = kron(u.matrix(), &v.matrix().transpose()).mul_vec(&rep.eigenvector);
        assert!(pt_eigen_residual(&rho2, rep.lambda_min, &good) < 1e-10);
        assert!(pt_eigen_residual(&rho2, rep.lambda_min, &bad) > 1e-3);
    }
}
