use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use qtele_core::canonical::{canonical_state, canonicalize, CanonicalForm, DetClass};
use qtele_core::metrics::{assess, metrics_of};
use qtele_core::numkernel::{
    hermitian_eig, rotation_to_spin, spin_relation_residual, svd3_special, CMatrix4, Matrix3,
};
use qtele_core::optimal::{construct_optimal, PropertyKind};
use qtele_core::properties::{concurrence, negativity, report};
use qtele_core::qstate::{
    hs_decompose, parse_state_json, parse_vector3, state_to_json, DensityMatrix, SampleKind,
    StateSampler,
};
use qtele_core::sim::{fidelity_stats, fidelity_stats_mc, optimal_protocol_stats, QuadratureRule};

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed_2024),
        failure_persistence: None,
        ..Config::default()
    }
}

fn random_state(seed: u64, pure: bool) -> DensityMatrix {
    let kind = if pure { SampleKind::HaarPure } else { SampleKind::GinibreMixed };
    StateSampler::new(seed).sample(kind)
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn local_unitaries_preserve_everything(seed in any::<u64>(), pure in any::<bool>()) {
        let rho = random_state(seed, pure);
        let mut s = StateSampler::new(seed ^ 0xabcdef);
        let (u, v) = (s.spin_unitary(), s.spin_unitary());
        let moved = rho.local_transform(u.matrix(), v.matrix());
        let (a, b) = (assess(&rho), assess(&moved));
        prop_assert!((a.f_max - b.f_max).abs() < 1e-9);
        prop_assert!((a.delta - b.delta).abs() < 1e-7);
        let (p, q) = (report(&rho), report(&moved));
        prop_assert!((p.linear_entropy - q.linear_entropy).abs() < 1e-9);
        prop_assert!((p.chsh_m - q.chsh_m).abs() < 1e-9);
        prop_assert!((p.concurrence - q.concurrence).abs() < 1e-7);
        prop_assert!((p.negativity - q.negativity).abs() < 1e-9);
    }

    #[test]
    fn canonical_form_is_reached_by_its_unitaries(seed in any::<u64>(), pure in any::<bool>()) {
        let rho = random_state(seed, pure);
        let c = canonicalize(&rho);
        let moved = hs_decompose(&c.apply_to(&rho));
        let signed = c.signed_t();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { signed[i] } else { 0.0 };
                prop_assert!((moved.t.0[i][j] - expect).abs() < 1e-9);
            }
            prop_assert!((moved.r[i] - c.r[i]).abs() < 1e-9);
            prop_assert!((moved.s[i] - c.s[i]).abs() < 1e-9);
        }
        prop_assert!(c.t_abs[0] >= c.t_abs[1] && c.t_abs[1] >= c.t_abs[2] && c.t_abs[2] >= 0.0);
        match c.det_class {
            DetClass::Negative => prop_assert_eq!(c.lambda, [-1, -1, -1]),
            DetClass::Positive => prop_assert_eq!(c.lambda, [-1, -1, 1]),
            DetClass::Zero => {}
        }
        let rebuilt = canonical_state(&c).unwrap();
        prop_assert!(rebuilt.matrix().max_abs_diff(c.apply_to(&rho).matrix()) < 1e-9);
    }

    #[test]
    fn special_svd_and_spin_lift(entries in prop::array::uniform9(-1.0f64..1.0)) {
        let t = Matrix3([
            [entries[0], entries[1], entries[2]],
            [entries[3], entries[4], entries[5]],
            [entries[6], entries[7], entries[8]],
        ]);
        let svd = svd3_special(&t);
        let prod = *svd.o1.matrix() * t * svd.o2.matrix().transpose();
        prop_assert!(prod.max_abs_diff(&Matrix3::diag(svd.d)) < 1e-10);
        prop_assert!(svd.d[0] >= svd.d[1] && svd.d[1] >= svd.d[2].abs());
        prop_assert!(svd.d[2] * t.det() >= -1e-14);
        for o in [svd.o1, svd.o2] {
            prop_assert!((o.matrix().det() - 1.0).abs() < 1e-10);
            prop_assert!(spin_relation_residual(&rotation_to_spin(&o), &o) < 1e-10);
        }
    }

    #[test]
    fn hermitian_eigendecomposition(seed in any::<u64>()) {
        let rho = random_state(seed, false);
        let e = hermitian_eig(rho.matrix()).unwrap();
        let back = e.map_spectrum(|x| x);
        prop_assert!(back.max_abs_diff(rho.matrix()) < 1e-12);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let gram = e.vectors.dagger() * e.vectors;
        prop_assert!(gram.max_abs_diff(&CMatrix4::identity()) < 1e-12);
    }

    #[test]
    fn bound_chain(seed in any::<u64>(), pure in any::<bool>()) {
        let rho = random_state(seed, pure);
        let f = assess(&rho).f_max;
        let (n, c) = (negativity(&rho), concurrence(&rho));
        prop_assert!((0.0..=1.0).contains(&n) && (0.0..=1.0).contains(&c));
        prop_assert!(n <= c + 1e-9);
        prop_assert!(f <= (2.0 + n) / 3.0 + 1e-9);
    }

    #[test]
    fn oracle_equivalence(seed in any::<u64>(), pure in any::<bool>()) {
        let rho = random_state(seed, pure);
        let m = assess(&rho);
        let s = optimal_protocol_stats(&rho, &QuadratureRule::default()).unwrap();
        prop_assert!((m.f_max - s.mean).abs() < 1e-9);
        prop_assert!((m.delta - s.deviation).abs() < 1e-9);
        prop_assert!(s.deviation.powi(2) <= s.mean * (1.0 - s.mean) + 1e-12);
        let raw = fidelity_stats(&rho, &QuadratureRule::default()).unwrap();
        prop_assert!(raw.mean <= m.f_max + 1e-9);
    }

    #[test]
    fn families_hit_their_targets(frac in 0.0f64..1.0, k in 0usize..3) {
        let kind = PropertyKind::ALL[k];
        let v = match kind {
            PropertyKind::LinearEntropy => frac * 8.0 / 9.0 * 0.999_999,
            PropertyKind::ChshB => 2.0 + (2.0 * 2f64.sqrt() - 2.0) * frac.max(1e-6),
            PropertyKind::Concurrence => frac.max(1e-6),
        };
        let (spec, rho) = construct_optimal(kind, v, None).unwrap();
        let m = assess(&rho);
        prop_assert!((kind.measure(&rho) - v).abs() < 1e-9);
        prop_assert!((m.f_max - spec.f_largest).abs() < 1e-9);
        prop_assert!(m.delta < 1e-9);
        prop_assert!(spec.f_largest > 2.0 / 3.0);
    }

    #[test]
    fn state_file_round_trip(seed in any::<u64>()) {
        let rho = random_state(seed, false);
        let back = parse_state_json(&state_to_json(&rho)).unwrap().into_density().unwrap();
        prop_assert_eq!(back.matrix(), rho.matrix());
    }

    #[test]
    fn state_parser_never_panics(text in ".{0,200}") {
        let _ = parse_state_json(&text).and_then(|s| s.into_density());
    }

    #[test]
    fn vector_argument_round_trip(v in prop::array::uniform3(-1e6f64..1e6)) {
        let text = format!("{},{},{}", v[0], v[1], v[2]);
        prop_assert_eq!(parse_vector3(&text).unwrap(), v);
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn monte_carlo_brackets_exact(seed in any::<u64>()) {
        let rho = random_state(seed, false);
        let exact = fidelity_stats(&rho, &QuadratureRule::default()).unwrap();
        let mc = fidelity_stats_mc(&rho, 20_000, seed).unwrap();
        let se = match mc.method {
            qtele_core::sim::StatsMethod::MonteCarlo { std_error, .. } => std_error,
            _ => unreachable!(),
        };
        prop_assert!((mc.mean - exact.mean).abs() < 4.0 * se.max(1e-15));
    }
}

#[test]
fn metrics_of_parameters_respects_classes() {
    let c = CanonicalForm::from_parameters([0.0; 3], [0.0; 3], [0.6, 0.5, 0.4], DetClass::Positive);
    let m = metrics_of(&c);
    assert!((m.f_max - 0.5 * (1.0 + 0.7 / 3.0)).abs() < 1e-15);
    assert!(!m.useful);
}
