use dessin_core::groups::{random_moebius, standard_group};
use dessin_core::metrics::{
    averaged_metric, chart_compatibility_defect, conjugated_metric, curvature, hermitian_metric,
    invariance_defect, metric_distance, orbit_triple_metric, pullback, round_metric,
    sphere_samples, Chart, DEFAULT_SAMPLES, DEFAULT_STEP,
};
use dessin_core::{FiniteMoebiusGroup, GroupType, SpherePoint};
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn conjugated_standard(t: &str, seed: u64) -> FiniteMoebiusGroup {
    let g = standard_group(t.parse().unwrap()).unwrap();
    g.conjugate_by(&random_moebius(&mut rng(seed), 100.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn pullback_is_functorial(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (m1, m2) = (random_moebius(&mut rng(s1), 100.0), random_moebius(&mut rng(s2), 100.0));
        let round = round_metric();
        let lhs = pullback(&m1.compose(&m2), &round);
        let rhs = pullback(&m2, &pullback(&m1, &round));
        prop_assert!(metric_distance(&lhs, &rhs, 100) < 1e-10);
    }

    #[test]
    fn unitary_pullback_preserves_round(seed in any::<u64>()) {
        let g = standard_group(GroupType::A5).unwrap();
        let h = &g.elements()[(seed % 60) as usize];
        prop_assert!(metric_distance(&pullback(h, &round_metric()), &round_metric(), 100) < 1e-10);
    }
}

#[test]
fn constructions_are_chart_compatible() {
    for t in ["D3", "A4", "S4"] {
        let g = conjugated_standard(t, 11);
        let metrics = [
            averaged_metric(&g),
            conjugated_metric(&g).unwrap(),
            hermitian_metric(&g),
            orbit_triple_metric(&g).unwrap(),
        ];
        for m in &metrics {
            let d = chart_compatibility_defect(m, 24);
            assert!(d < 1e-9, "{t} {:?}: {d:e}", m.provenance());
        }
    }
}

#[test]
fn averaged_and_hermitian_are_invariant() {
    for (k, t) in ["C4", "D2", "D5", "A4", "S4", "A5"].iter().enumerate() {
        let g = conjugated_standard(t, 100 + k as u64);
        assert!(
            invariance_defect(&averaged_metric(&g), &g, DEFAULT_SAMPLES) < 1e-9,
            "{t}"
        );
        assert!(
            invariance_defect(&hermitian_metric(&g), &g, DEFAULT_SAMPLES) < 1e-9,
            "{t}"
        );
    }
}

#[test]
fn round_is_invariant_only_under_unitary_groups() {
    let g = standard_group(GroupType::S4).unwrap();
    assert!(invariance_defect(&round_metric(), &g, DEFAULT_SAMPLES) < 1e-10);
    let conj = conjugated_standard("S4", 3);
    assert!(invariance_defect(&round_metric(), &conj, DEFAULT_SAMPLES) > 1e-3);
}

#[test]
fn so3_groups_give_round_metric() {
    let round = round_metric();
    for t in ["C3", "D4", "A4", "S4", "A5"] {
        let g = standard_group(t.parse().unwrap()).unwrap();
        assert!(g.is_in_so3(1e-8));
        assert!(
            metric_distance(&averaged_metric(&g), &round, DEFAULT_SAMPLES) < 1e-9,
            "{t}"
        );
        assert!(
            metric_distance(&hermitian_metric(&g), &round, DEFAULT_SAMPLES) < 1e-9,
            "{t}"
        );
        if let Ok(m) = conjugated_metric(&g) {
            assert!(metric_distance(&m, &round, DEFAULT_SAMPLES) < 1e-9, "{t}");
        }
    }
}

#[test]
fn curvature_scaling_by_constant() {
    let g = conjugated_standard("A4", 5);
    let m = conjugated_metric(&g).unwrap();
    let m4 = m.scaled(4.0);
    for p in sphere_samples(30) {
        let SpherePoint::Finite(z) = p else { continue };
        let (k, k4) = (
            curvature(&m, z, DEFAULT_STEP).unwrap(),
            curvature(&m4, z, DEFAULT_STEP).unwrap(),
        );
        assert!((k4 - k / 4.0).abs() < 1e-9, "{z}: {k} {k4}");
    }
}

#[test]
fn orbit_triple_invariance_is_measured() {
    // the CLI reports this defect; with pullbacks by h⁻¹ the average is invariant
    let g = conjugated_standard("A4", 9);
    let m = orbit_triple_metric(&g).unwrap();
    assert!(invariance_defect(&m, &g, DEFAULT_SAMPLES) < 1e-8);
}

#[test]
fn chart_locate_round_trips() {
    for p in sphere_samples(50) {
        let (chart, w) = Chart::locate(&p);
        assert!(w.norm() <= 1.0);
        assert!(chart.point(w).chordal_distance(&p) < 1e-15);
    }
    assert_eq!(
        Chart::locate(&SpherePoint::Infinity),
        (Chart::Infinity, C64::new(0.0, 0.0))
    );
}
