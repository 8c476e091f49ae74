use std::f64::consts::{PI, TAU};

use proptest::collection::vec;
use proptest::prelude::*;
use schwarz_fourier::dtd::*;
use schwarz_fourier::fourier::arc_fn;
use schwarz_fourier::geometry::*;
use schwarz_fourier::kernels::{epsilon_quadrature, positivity_radius_theory};

fn snapped() -> SnappedScenario {
    let p = discs_from_center_radius(1.4, 1.2).unwrap();
    snap_pair(&p, GridConfig::for_order(20, p.radius(), 1.0).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn matrix_and_series_paths_agree(v in vec(-1.0f64..1.0, 42), t in -PI..PI, r in 0.0f64..=1.0) {
        let s = snapped();
        let a = dtd_interpolation_apply(&s, &v, (t, r)).unwrap();
        let b = dtd_interpolation_series(&s, &v, (t, r)).unwrap();
        prop_assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn sign_vector_attains_l1_bound(t in -PI..PI, r in 0.0f64..1.0) {
        let op = InterpolationOperator::new(&snapped()).unwrap();
        let sv = extremal_sign_vector(&op, t, r);
        prop_assert_eq!(op.apply(&sv, t, r).unwrap(), op.bound(t, r));
    }

    #[test]
    fn l1_bound_dominates_unit_data(v in vec(-1.0f64..=1.0, 42), t in -PI..PI, r in 0.0f64..1.0) {
        let op = InterpolationOperator::new(&snapped()).unwrap();
        prop_assert!(op.apply(&v, t, r).unwrap().abs() <= op.bound(t, r) + 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn projection_maximum_principle(terms in vec((-1.0f64..1.0, 0.0f64..10.0, 0.0f64..TAU), 1..5)) {
        let p = discs_from_center_radius(1.4, 1.2).unwrap();
        let order = 25;
        let norm = terms.iter().map(|t| t.0.abs()).sum::<f64>().max(1.0);
        let v = arc_fn(move |x| terms.iter().map(|(a, k, ph)| a * (k * x + ph).cos()).sum::<f64>() / norm);
        let prof = dtd_projection_profile(&p, order, v, 31).unwrap();
        let chi = dtd_projection_profile(&p, order, arc_fn(|_| 1.0), 31).unwrap();
        for ((x, y), f) in prof.values.iter().zip(&chi.values).zip(chi.in_b1_plus(order).unwrap()) {
            if f {
                prop_assert!(x.abs() <= y + 1e-8);
            }
        }
    }
}

#[test]
fn exact_profile_of_constant_data_is_flat() {
    for (m, r) in [(1.4, 1.2), (2.1, 1.2), (0.75, 1.7)] {
        let p = discs_from_center_radius(m, r).unwrap();
        let prof = dtd_exact_profile(&p, arc_fn(|_| 1.0), 101).unwrap();
        assert!(prof.max() - prof.min() < 1e-4, "({m}, {r})");
        assert!((prof.max() - p.contraction()).abs() < 1e-4);
    }
}

#[test]
fn projection_profile_within_epsilon_of_c1() {
    let p = discs_from_center_radius(1.4, 1.2).unwrap();
    for order in [10, 25, 60] {
        let prof = dtd_projection_profile(&p, order, arc_fn(|_| 1.0), 61).unwrap();
        let eps = epsilon_quadrature(order, positivity_radius_theory(order).unwrap()).unwrap();
        for (v, f) in prof.values.iter().zip(prof.in_b1_plus(order).unwrap()) {
            if f {
                assert!(*v <= p.contraction() + eps + 1e-6, "N = {order}: {v}");
            }
        }
    }
}

#[test]
fn pure_modes_reproduced_including_nyquist() {
    for n in [6, 12, 42, 82] {
        let m = schwarz_fourier::fourier::InterpMatrices::new(n).unwrap();
        let nodes = schwarz_fourier::fourier::interpolation_nodes(n);
        for k in 0..=n / 2 {
            let v: Vec<f64> = nodes.iter().map(|&x| (k as f64 * x).cos()).collect();
            for (t, r) in [(0.1f64, 0.3f64), (1.7, 0.8), (3.0, 1.0)] {
                let mv = ModeVectors::new(n, t, r);
                let w = m.c() * &mv.c + m.s() * &mv.s;
                let got: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert!((got - r.powi(k as i32) * (k as f64 * t).cos()).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn bound_vanishes_at_intersection_nodes() {
    let s = snapped();
    let prof = interp_bound_profile(&s, 0, true).unwrap();
    assert_eq!(prof.values[0], 0.0);
    assert_eq!(*prof.values.last().unwrap(), 0.0);
    assert!(prof.grid_marks.unwrap().iter().all(|&g| g));
}
