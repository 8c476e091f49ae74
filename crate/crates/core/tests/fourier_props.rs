use std::f64::consts::{PI, TAU};

use proptest::collection::vec;
use proptest::prelude::*;
use schwarz_fourier::fourier::*;
use schwarz_fourier::kernels::TruncatedKernel;
use schwarz_fourier::quad::{adaptive, Tolerance};

fn series(order: usize) -> impl Strategy<Value = FourierCoeffs> {
    (-1.0f64..1.0, vec(-1.0f64..1.0, order), vec(-1.0f64..1.0, order))
        .prop_map(|(a0, a, b)| FourierCoeffs::new(a0, a, b, None).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projection_is_idempotent(c in (1usize..30).prop_flat_map(series)) {
        let order = c.order();
        let cc = c.clone();
        let g = BoundaryFn::from_fn(arc_fn(move |t| cc.eval(t)));
        let p = project(&g, order).unwrap();
        prop_assert!(p.max_abs_diff(&c) <= 1e-12);
        let pp = project(&BoundaryFn::from_fn(arc_fn(move |t| p.eval(t))), order).unwrap();
        prop_assert!(pp.max_abs_diff(&c) <= 1e-12);
    }

    #[test]
    fn interpolation_exact_at_nodes(w in (3usize..160).prop_flat_map(|h| vec(-5.0f64..5.0, 2 * h))) {
        let c = interpolate(&w).unwrap();
        for (x, v) in interpolation_nodes(w.len()).iter().zip(&w) {
            prop_assert!((c.eval(*x) - v).abs() < 1e-10);
        }
    }

    #[test]
    fn matrix_and_fft_paths_agree(w in (3usize..200).prop_flat_map(|h| vec(-1.0f64..1.0, 2 * h))) {
        let m = InterpMatrices::new(w.len()).unwrap().coefficients(&w).unwrap();
        let f = interpolate_fft(&w).unwrap();
        prop_assert!(m.max_abs_diff(&f) <= 1e-10);
    }

    #[test]
    fn center_value_is_half_a0(c in (1usize..20).prop_flat_map(series), t in -PI..PI) {
        prop_assert_eq!(harmonic_eval(&c, t, 0.0).unwrap(), 0.5 * c.a0());
    }

    #[test]
    fn projected_extension_is_kn_convolution(
        order in 1usize..30,
        w in 0.2f64..2.5,
        theta in -PI..PI,
        r in 0.0f64..=1.0,
    ) {
        let g = BoundaryFn::two_arcs(w, arc_fn(|t| (2.0 * t).sin() + 1.0), arc_fn(|t| t * 0.3))
            .unwrap();
        let c = project(&g, order).unwrap();
        let k = TruncatedKernel::new(order).unwrap();
        let tol = Tolerance { abs: 1e-14, rel: 1e-13, max_panels: 4000 };
        let v = adaptive(|s| k.eval(theta - s, r) * g.eval(s), &g.split_points(theta - PI, theta + PI), tol)
            .unwrap()
            / TAU;
        prop_assert!((v - c.eval_harmonic(theta, r)).abs() <= 1e-8);
    }

    #[test]
    fn poisson_extension_of_trig_polynomial(c in (1usize..8).prop_flat_map(series), t in -PI..PI, r in 0.0f64..0.999) {
        let cc = c.clone();
        let g = BoundaryFn::from_fn(arc_fn(move |s| cc.eval(s)));
        prop_assert!((poisson_eval(&g, t, r).unwrap() - c.eval_harmonic(t, r)).abs() < 1e-9);
    }
}

#[test]
fn partial_sums_converge_to_jump_midpoint() {
    let g = BoundaryFn::arc_indicator(1.3).unwrap();
    for order in [40, 80, 160, 320] {
        let s = project(&g, order).unwrap();
        assert!((s.eval(1.3) - 0.5).abs() < 0.05, "N = {order}");
        assert!((s.eval(-1.3) - 0.5).abs() < 0.05, "N = {order}");
    }
}

#[test]
fn projection_l2_error_decreases() {
    let g = BoundaryFn::arc_indicator(0.9).unwrap();
    let mut prev = f64::INFINITY;
    for order in [5, 10, 20, 40, 80] {
        let c = project(&g, order).unwrap();
        let energy = c.a0() * c.a0() / 2.0 + c.a().iter().chain(c.b()).map(|x| x * x).sum::<f64>();
        let err = (1.8 - PI * energy).max(0.0).sqrt();
        assert!(err < prev, "N = {order}");
        prev = err;
    }
}

#[test]
fn lebesgue_constants_against_high_precision_values() {
    // Reference values from a 30-digit evaluation of (1/π)∫_0^π |D_N|.
    assert!((lebesgue_constant(1).unwrap() - 1.4359911).abs() < 1e-7);
    assert!((lebesgue_constant(1000).unwrap() - 4.0701636).abs() < 1e-7);
    let slope = (lebesgue_constant(4000).unwrap() - lebesgue_constant(1000).unwrap()) / 4f64.ln();
    assert!((slope - 4.0 / (PI * PI)).abs() < 0.005, "slope {slope}");
}

#[test]
fn curve_limits_for_unit_slopes() {
    let g = BoundaryFn::builder(-1.0)
        .piece(0.0, arc_fn(|t| 2.0 + t))
        .piece(TAU - 1.0, arc_fn(|t| -t.sin()))
        .build()
        .unwrap();
    for slope in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let d = curve_limit_verify(&g, slope, 8).unwrap();
        assert!(d < 1e-2, "slope {slope}: {d}");
    }
}
