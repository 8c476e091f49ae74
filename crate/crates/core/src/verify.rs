//! Invariant suites run by `sfdd verify`.
//!
//! Each check returns a named pass/fail outcome with a short measurement.
//! Random test vectors come from a ChaCha generator with a caller-chosen
//! seed. A [`Fault`] can be injected to confirm that the suites notice a
//! broken evaluation path.

use std::f64::consts::{E, PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dtd::{
    dtd_exact_profile, dtd_interpolation_apply, dtd_projection_profile, extremal_sign_vector,
    interp_contraction_bound, InterpolationOperator, ModeVectors,
};
use crate::error::{Error, Result};
use crate::fourier::{
    arc_fn, curve_limit_verify, interpolate, interpolation_nodes, lebesgue_constant, project,
    BoundaryFn, FourierCoeffs, InterpMatrices,
};
use crate::geometry::{
    angles_from_discs, discs_from_angles, discs_from_center_radius, snap_pair, snap_to_grids,
    GridConfig,
};
use crate::kernels::{
    epsilon_quadrature, hoorfar_sandwich, kernel_grid_minimum, lambert_w, poisson_kernel,
    positivity_radius_numeric, positivity_radius_theory, verify_positivity_inequality,
    TruncatedKernel,
};
use crate::quad::{self, Tolerance};
use crate::schwarz::{
    manufactured, observed_rate, overlap_points, BoundaryData, ManufacturedKind, Mode,
    SchwarzConfig, SchwarzSolver, Variant, DEFAULT_LOG_SOURCE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Kernels,
    Fourier,
    Dtd,
    Schwarz,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kernels" => Ok(Self::Kernels),
            "fourier" => Ok(Self::Fourier),
            "dtd" => Ok(Self::Dtd),
            "schwarz" => Ok(Self::Schwarz),
            "all" => Ok(Self::All),
            _ => Err(Error::InvalidInput(format!(
                "unknown suite '{s}' (expected kernels, fourier, dtd, schwarz or all)"
            ))),
        }
    }
}

/// Deliberate defects for mutation testing of the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Evaluates interpolants with weight 1 instead of ½ on the Nyquist mode.
    DropNyquistHalf,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "drop-nyquist-half" => Ok(Self::DropNyquistHalf),
            _ => Err(Error::InvalidInput(format!("unknown fault '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}/{}: {}", self.suite, self.name, self.detail)
    }
}

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Runs one suite (or all) and returns the outcomes in a fixed order.
pub fn run_suite(suite: Suite, seed: u64, fault: Fault) -> Vec<CheckOutcome> {
    let ctx = Ctx { seed, fault };
    let mut out = Vec::new();
    if matches!(suite, Suite::Kernels | Suite::All) {
        out.extend(kernel_checks(&ctx));
    }
    if matches!(suite, Suite::Fourier | Suite::All) {
        out.extend(fourier_checks(&ctx));
    }
    if matches!(suite, Suite::Dtd | Suite::All) {
        out.extend(dtd_checks(&ctx));
    }
    if matches!(suite, Suite::Schwarz | Suite::All) {
        out.extend(schwarz_checks(&ctx));
    }
    out
}

struct Ctx {
    seed: u64,
    fault: Fault,
}

impl Ctx {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }

    /// Harmonic extension of an interpolant, honouring the injected fault.
    fn series_eval(&self, c: &FourierCoeffs, theta: f64, r: f64) -> f64 {
        let v = c.eval_harmonic(theta, r);
        match (self.fault, c.nyquist()) {
            (Fault::DropNyquistHalf, Some(ny)) => {
                let h = (c.order() + 1) as f64;
                v + 0.5 * ny * r.powf(h) * (h * theta).cos()
            }
            _ => v,
        }
    }
}

fn check(suite: &'static str, name: &'static str, r: Result<(bool, String)>) -> CheckOutcome {
    let (passed, detail) = match r {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome {
        suite,
        name,
        passed,
        detail,
    }
}

fn kernel_checks(_ctx: &Ctx) -> Vec<CheckOutcome> {
    const S: &str = "kernels";
    let mut out = Vec::new();

    out.push(check(S, "closed_form_vs_partial_sum", (|| {
        let mut worst: f64 = 0.0;
        for order in [5, 25, 60] {
            let k = TruncatedKernel::new(order)?;
            for i in 0..200 {
                let r = 0.999 * i as f64 / 199.0;
                for j in 0..200 {
                    let psi = TAU * j as f64 / 200.0;
                    worst = worst.max((k.eval(psi, r) - k.partial_sum(psi, r)).abs());
                }
            }
        }
        Ok((worst <= 1e-11, format!("max diff {worst:.3e} (limit 1e-11)")))
    })()));

    out.push(check(S, "poisson_tail_bound", (|| {
        let mut ok = true;
        let mut worst_ratio: f64 = 0.0;
        for order in [5, 20, 60] {
            let k = TruncatedKernel::new(order)?;
            for i in 0..50 {
                let r = 0.99 * i as f64 / 49.0;
                let bound = 2.0 * r.powi(order as i32 + 1) / (1.0 - r);
                for j in 0..64 {
                    let psi = TAU * j as f64 / 64.0;
                    let d = (poisson_kernel(psi, r)? - k.eval(psi, r)).abs();
                    ok &= d <= bound + 1e-12;
                    if bound > 1e-10 {
                        worst_ratio = worst_ratio.max(d / bound);
                    }
                }
            }
        }
        Ok((ok, format!("max |K - K_N| / bound = {worst_ratio:.3}")))
    })()));

    out.push(check(S, "normalization", (|| {
        let mut worst: f64 = 0.0;
        for order in [4, 17, 60, 100] {
            let k = TruncatedKernel::new(order)?;
            let nodes = 2 * order + 2;
            for r in [0.0, 0.3, 0.8, 0.99, 1.0] {
                let mean = (0..nodes)
                    .map(|j| k.eval(TAU * j as f64 / nodes as f64, r))
                    .sum::<f64>()
                    / nodes as f64;
                worst = worst.max((mean - 1.0).abs());
            }
        }
        Ok((worst <= 1e-12, format!("max |mean - 1| = {worst:.3e}")))
    })()));

    out.push(check(S, "positivity_below_r_star", (|| {
        let mut worst = (f64::INFINITY, 0);
        for order in 4..=100 {
            let rs = positivity_radius_theory(order)?;
            let (v, _, _) = kernel_grid_minimum(order, 4 * order, 100, rs)?;
            if v < worst.0 {
                worst = (v, order);
            }
        }
        Ok((worst.0 >= 0.0, format!("min K_N = {:.3e} at N = {}", worst.0, worst.1)))
    })()));

    out.push(check(S, "numeric_radius_below_theory", (|| {
        let mut worst = (0.0, 0);
        for order in 4..=100 {
            let rep = positivity_radius_numeric(order, 4 * order, 1e-5)?;
            if rep.q > worst.0 {
                worst = (rep.q, order);
            }
        }
        Ok((worst.0 <= 1.0, format!("max q = {:.4} at N = {}", worst.0, worst.1)))
    })()));

    out.push(check(S, "epsilon_decreasing", (|| {
        let mut prev = f64::INFINITY;
        let mut ok = true;
        for order in 10..=100 {
            let e = epsilon_quadrature(order, positivity_radius_theory(order)?)?;
            ok &= e < prev;
            prev = e;
        }
        Ok((ok, format!("eps(r_N*) decreasing on N = 10..100; eps(100) = {prev:.6}")))
    })()));

    out.push(check(S, "lambert_w_equation", (|| {
        let mut worst: f64 = 0.0;
        for k in 0..=200 {
            let z = if k == 0 { 0.0 } else { 10f64.powf(-6.0 + 12.0 * k as f64 / 200.0) };
            let w = lambert_w(z)?;
            worst = worst.max((w * w.exp() - z).abs() / z.max(1.0));
        }
        Ok((worst <= 1e-12, format!("max relative residual {worst:.3e}")))
    })()));

    out.push(check(S, "hoorfar_sandwich", (|| {
        let mut ok = true;
        for k in 0..=100 {
            let z = E * (1e6 / E).powf(k as f64 / 100.0);
            ok &= hoorfar_sandwich(z)?;
        }
        for order in 4..=100 {
            ok &= verify_positivity_inequality(order)?.holds();
        }
        Ok((ok, "z in [e, 1e6]; inequality chain for N = 4..100".into()))
    })()));

    out
}

fn fourier_checks(ctx: &Ctx) -> Vec<CheckOutcome> {
    const S: &str = "fourier";
    let mut out = Vec::new();

    out.push(check(S, "projection_idempotent", (|| {
        let g = BoundaryFn::two_arcs(1.0, arc_fn(|t| t.exp()), arc_fn(|t| (3.0 * t).sin()))?;
        let c = project(&g, 12)?;
        let cc = c.clone();
        let again = project(&BoundaryFn::from_fn(arc_fn(move |t| cc.eval(t))), 12)?;
        let d = c.max_abs_diff(&again);
        Ok((d <= 1e-12, format!("coefficient change {d:.3e}")))
    })()));

    out.push(check(S, "projection_l2_error_decreasing", (|| {
        let t = 1.0;
        let g = BoundaryFn::arc_indicator(t)?;
        let mut prev = f64::INFINITY;
        let mut ok = true;
        let mut last = 0.0;
        for order in [5, 10, 20, 40, 80] {
            let c = project(&g, order)?;
            // Parseval: ‖g - P_N g‖² = ‖g‖² - π(A0²/2 + Σ A_n² + B_n²).
            let energy = c.a0() * c.a0() / 2.0
                + c.a().iter().chain(c.b()).map(|x| x * x).sum::<f64>();
            let err = (2.0 * t - PI * energy).max(0.0).sqrt();
            ok &= err < prev;
            prev = err;
            last = err;
        }
        Ok((ok, format!("L2 error at N = 80: {last:.4e}")))
    })()));

    out.push(check(S, "interpolation_nodal_exact", (|| {
        let mut rng = ctx.rng(1);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let n = 2 * rng.random_range(3..200);
            let (a, b, c) = (rng.random_range(-2.0..2.0), rng.random_range(0.0..6.0), rng.random_range(-PI..PI));
            let g = move |t: f64| a * (b * t).cos() + (t - c).abs().sqrt() + (t * a).sin().abs();
            let x = interpolation_nodes(n);
            let w: Vec<f64> = x.iter().map(|&t| g(t)).collect();
            let coeffs = interpolate(&w)?;
            for (t, v) in x.iter().zip(&w) {
                worst = worst.max((ctx.series_eval(&coeffs, *t, 1.0) - v).abs());
            }
        }
        Ok((worst < 1e-10, format!("max nodal error {worst:.3e}")))
    })()));

    out.push(check(S, "nyquist_mode_reproduced", (|| {
        let mut worst: f64 = 0.0;
        for n in [6, 20, 42, 300] {
            let h = n / 2;
            for k in [0, 1, h - 1, h] {
                let w: Vec<f64> = interpolation_nodes(n).iter().map(|&x| (k as f64 * x).cos()).collect();
                let c = interpolate(&w)?;
                for (t, r) in [(0.3f64, 0.5f64), (1.1, 0.9), (2.9, 1.0)] {
                    let want = r.powi(k as i32) * (k as f64 * t).cos();
                    worst = worst.max((ctx.series_eval(&c, t, r) - want).abs());
                }
            }
        }
        Ok((worst < 1e-10, format!("max mode error {worst:.3e}")))
    })()));

    out.push(check(S, "partial_sum_at_jump", (|| {
        let g = BoundaryFn::arc_indicator(1.0)?;
        let mut worst: f64 = 0.0;
        for order in [40, 80, 160] {
            worst = worst.max((project(&g, order)?.eval(1.0) - 0.5).abs());
        }
        Ok((worst < 0.05, format!("max |S_N(theta*) - 1/2| = {worst:.3e} for N >= 40")))
    })()));

    out.push(check(S, "projection_equals_kn_integral", (|| {
        let g = BoundaryFn::two_arcs(0.8, arc_fn(|t| 1.0 + t * t), arc_fn(|t| t.cos()))?;
        let order = 15;
        let c = project(&g, order)?;
        let k = TruncatedKernel::new(order)?;
        let mut worst: f64 = 0.0;
        for (theta, r) in [(0.0, 0.5), (0.7, 0.95), (2.5, 1.0), (-1.2, 0.2)] {
            let pts = g.split_points(theta - PI, theta + PI);
            let tol = Tolerance { abs: 1e-14, rel: 1e-13, max_panels: 4000 };
            let v = quad::adaptive(|t| k.eval(theta - t, r) * g.eval(t), &pts, tol)? / TAU;
            worst = worst.max((v - c.eval_harmonic(theta, r)).abs());
        }
        Ok((worst <= 1e-8, format!("max diff {worst:.3e}")))
    })()));

    out.push(check(S, "mean_value", (|| {
        let g = BoundaryFn::two_arcs(0.8, arc_fn(|t| 1.0 + t * t), arc_fn(|t| t.cos()))?;
        let c = project(&g, 9)?;
        let ok = (0..8).all(|j| c.eval_harmonic(j as f64, 0.0) == 0.5 * c.a0());
        Ok((ok, format!("A0/2 = {:.9}", 0.5 * c.a0())))
    })()));

    out.push(check(S, "lebesgue_constant", (|| {
        let l1 = lebesgue_constant(1)?;
        let l1000 = lebesgue_constant(1000)?;
        let slope = (lebesgue_constant(2000)? - l1000) / 2f64.ln();
        let ok = (l1 - 1.4359911).abs() < 1e-6
            && (l1000 - 4.0701636).abs() < 1e-6
            && (slope - 4.0 / (PI * PI)).abs() < 0.01;
        Ok((ok, format!("L(1) = {l1:.7}, L(1000) = {l1000:.7}, growth slope {slope:.4}")))
    })()));

    out.push(check(S, "curve_limits", (|| {
        let g = BoundaryFn::builder(0.0)
            .piece(2.0, arc_fn(|_| 1.0))
            .piece(TAU, arc_fn(|_| 0.0))
            .build()?;
        let mut worst: f64 = 0.0;
        for slope in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            worst = worst.max(curve_limit_verify(&g, slope, 8)?);
        }
        Ok((worst < 1e-2, format!("max deviation {worst:.3e} over slopes -2..2")))
    })()));

    out
}

fn dtd_checks(ctx: &Ctx) -> Vec<CheckOutcome> {
    const S: &str = "dtd";
    let mut out = Vec::new();
    let base = || discs_from_center_radius(1.4, 1.2);

    out.push(check(S, "geometry_roundtrip", (|| {
        let mut worst: f64 = 0.0;
        for i in 1..=10 {
            for j in 1..=10 {
                let t1 = 0.05 + 3.0 * i as f64 / 10.5;
                let t2 = t1 + (PI - 0.02 - t1) * j as f64 / 10.0;
                let p = discs_from_angles(t1, t2)?;
                let (a, b) = angles_from_discs(p.m(), p.radius())?;
                worst = worst.max((a - t1).abs()).max((b - t2).abs());
            }
        }
        Ok((worst <= 1e-10, format!("max angle error {worst:.3e}")))
    })()));

    out.push(check(S, "exact_dtd_constant", (|| {
        let p = base()?;
        let prof = dtd_exact_profile(&p, arc_fn(|_| 1.0), 101)?;
        let spread = prof.max() - prof.min();
        Ok((spread < 1e-4, format!("max - min = {spread:.3e}, C1 = {:.6}", p.contraction())))
    })()));

    let order = 25;
    out.push(check(S, "projection_maximum_principle", (|| {
        let p = base()?;
        let samples = 41;
        let chi = dtd_projection_profile(&p, order, arc_fn(|_| 1.0), samples)?;
        let inside = chi.in_b1_plus(order)?;
        let mut rng = ctx.rng(2);
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..10 {
            let terms: Vec<(f64, f64, f64)> = (0..4)
                .map(|_| (rng.random_range(-1.0..1.0), rng.random_range(0.0..8.0), rng.random_range(0.0..TAU)))
                .collect();
            let norm: f64 = terms.iter().map(|t| t.0.abs()).sum::<f64>().max(1.0);
            let v = arc_fn(move |t| terms.iter().map(|(a, k, ph)| a * (k * t + ph).cos()).sum::<f64>() / norm);
            let prof = dtd_projection_profile(&p, order, v, samples)?;
            for ((x, y), &f) in prof.values.iter().zip(&chi.values).zip(&inside) {
                if f {
                    worst = worst.max(x.abs() - y);
                }
            }
        }
        Ok((worst <= 1e-8, format!("max excess {worst:.3e}")))
    })()));

    out.push(check(S, "projection_epsilon_correction", (|| {
        let p = base()?;
        let prof = dtd_projection_profile(&p, order, arc_fn(|_| 1.0), 41)?;
        let limit = p.contraction() + epsilon_quadrature(order, positivity_radius_theory(order)?)? + 1e-6;
        let inside = prof.in_b1_plus(order)?;
        let m = prof
            .values
            .iter()
            .zip(&inside)
            .filter(|(_, &f)| f)
            .map(|(v, _)| *v)
            .fold(f64::NEG_INFINITY, f64::max);
        Ok((m <= limit, format!("max {m:.6} vs C1 + eps = {limit:.6}")))
    })()));

    let snapped = || -> Result<_> {
        let p = base()?;
        snap_pair(&p, GridConfig::for_order(20, p.radius(), 1.0)?)
    };

    out.push(check(S, "l1_bound_attained", (|| {
        let s = snapped()?;
        let op = InterpolationOperator::new(&s)?;
        let mut ok = true;
        for k in 0..50 {
            let (t, r) = (TAU * k as f64 / 50.0, 0.98 * (k % 7) as f64 / 6.0);
            let sign = extremal_sign_vector(&op, t, r);
            ok &= op.apply(&sign, t, r)? == op.bound(t, r);
        }
        Ok((ok, "sign vector attains the l1 bound at 50 points".into()))
    })()));

    out.push(check(S, "two_path_equality", (|| {
        let s = snapped()?;
        let op = InterpolationOperator::new(&s)?;
        let n1 = s.grid().n1();
        let mut rng = ctx.rng(3);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let v: Vec<f64> = (0..n1).map(|_| rng.random_range(-1.0..1.0)).collect();
            let (t, r) = (rng.random_range(-PI..PI), rng.random_range(0.0..1.0));
            let a = op.apply(&v, t, r)?;
            let mut w = v.clone();
            op.mask().apply(&mut w);
            let b = ctx.series_eval(&interpolate(&w)?, t, r);
            worst = worst.max((a - b).abs());
        }
        Ok((worst <= 1e-10, format!("max diff {worst:.3e}")))
    })()));

    out.push(check(S, "mode_vectors_reproduce_modes", (|| {
        let n = 42;
        let m = InterpMatrices::new(n)?;
        let nodes = interpolation_nodes(n);
        let mut worst: f64 = 0.0;
        for k in 0..=n / 2 {
            let v: Vec<f64> = nodes.iter().map(|&x| (k as f64 * x).cos()).collect();
            for (t, r) in [(0.4, 0.7), (2.0, 0.99)] {
                let mv = ModeVectors::new(n, t, r);
                let w = m.c() * &mv.c + m.s() * &mv.s;
                let got: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
                worst = worst.max((got - r.powi(k as i32) * (k as f64 * t).cos()).abs());
            }
        }
        Ok((worst < 1e-12, format!("max mode error {worst:.3e}")))
    })()));

    out.push(check(S, "interp_bound_symmetric", (|| {
        let mut worst: f64 = 0.0;
        let n = 82;
        for l in 1..n / 4 {
            let t1 = TAU * l as f64 / n as f64;
            if !(0.1..PI / 2.0 - 0.1).contains(&t1) {
                continue;
            }
            let s = snap_to_grids(t1, PI - t1, n, n)?;
            let c = interp_contraction_bound(&s)?;
            worst = worst.max((c - (1.0 - 2.0 * s.theta1_int() / PI)).abs());
        }
        Ok((worst <= 0.05, format!("max |C - (1 - 2 theta1/pi)| = {worst:.4} (R = 1, N = 40)")))
    })()));

    out.push(check(S, "interpolation_apply_zero_at_intersection", (|| {
        let s = snapped()?;
        let v = vec![1.0; s.grid().n1()];
        let p = s.pair();
        let (t, _) = crate::geometry::gamma2_to_b1_polar(p, p.theta2_star())?;
        let val = dtd_interpolation_apply(&s, &v, (t, 1.0))?;
        Ok((val == 0.0, format!("value at z1: {val:e}")))
    })()));

    out
}

fn schwarz_checks(_ctx: &Ctx) -> Vec<CheckOutcome> {
    const S: &str = "schwarz";
    let mut out = Vec::new();
    let setup = || -> Result<_> {
        let p = discs_from_center_radius(1.4, 1.2)?;
        let (x0, y0) = DEFAULT_LOG_SOURCE;
        let u = manufactured(ManufacturedKind::LogSource(x0, y0), &p)?;
        Ok((p, u))
    };

    out.push(check(S, "zero_fixed_point", (|| {
        let (p, _) = setup()?;
        let cfg = SchwarzConfig::new(p, Variant::Exact, Mode::Additive, 2, 1e-12, 21)?;
        let s = SchwarzSolver::new(cfg, BoundaryData::zero());
        let s1 = s.sweep(&s.initial_state()?)?;
        let ok = s1.trace1.iter().chain(&s1.trace2).all(|&v| v == 0.0);
        Ok((ok, "g = 0 stays 0".into()))
    })()));

    out.push(check(S, "manufactured_harmonic", (|| {
        let (p, u) = setup()?;
        let worst = crate::schwarz::domain_points(&p, 100, 0.0)
            .into_iter()
            .map(|(x, y)| u.laplacian(x, y).abs())
            .fold(0.0, f64::max);
        Ok((worst < 1e-6, format!("max stencil residual {worst:.3e}")))
    })()));

    out.push(check(S, "exact_additive_rate", (|| {
        let (p, u) = setup()?;
        let f = u.function();
        let reference = move |x: f64, y: f64| f(x, y);
        let cfg = SchwarzConfig::new(p, Variant::Exact, Mode::Additive, 80, 1e-10, 101)?;
        let solver = SchwarzSolver::new(cfg, u.boundary_data());
        let tr = solver.run(Some(&reference))?;
        let rate = observed_rate(&tr.updates)?;
        let mut overlap: f64 = 0.0;
        let mut agree: f64 = 0.0;
        for (x, y) in overlap_points(&p, 50, 0.0) {
            let a = solver.eval_disc1(&tr.state, x, y)?;
            let b = solver.eval_disc2(&tr.state, x, y)?;
            overlap = overlap.max((a - reference(x, y)).abs());
            agree = agree.max((a - b).abs());
        }
        let errs = tr.true_errors.clone().unwrap_or_default();
        let c1 = p.contraction();
        let contracting = errs.windows(2).all(|w| w[1] <= c1 * w[0] + 1e-3);
        let ok = tr.converged && rate <= 0.456 && overlap < 5e-3 && agree < 1e-4 && contracting;
        Ok((
            ok,
            format!("rate {rate:.4} (<= 0.456), overlap error {overlap:.2e}, u1 - u2 {agree:.2e}, {} sweeps", tr.sweeps),
        ))
    })()));

    out.push(check(S, "exact_multiplicative_rate", (|| {
        let (p, u) = setup()?;
        let add = SchwarzSolver::new(
            SchwarzConfig::new(p, Variant::Exact, Mode::Additive, 80, 1e-10, 101)?,
            u.boundary_data(),
        )
        .run(None)?;
        let mul = SchwarzSolver::new(
            SchwarzConfig::new(p, Variant::Exact, Mode::Multiplicative, 80, 1e-10, 101)?,
            u.boundary_data(),
        )
        .run(None)?;
        let (ra, rm) = (observed_rate(&add.updates)?, observed_rate(&mul.updates)?);
        let c1 = p.contraction();
        let ok = mul.converged && rm <= c1 * c1 + 0.02 && rm <= ra * ra + 0.05;
        Ok((ok, format!("multiplicative {rm:.4}, C1^2 + 0.02 = {:.4}, additive^2 + 0.05 = {:.4}", c1 * c1 + 0.02, ra * ra + 0.05)))
    })()));

    out.push(check(S, "projection_converges", (|| {
        let (p, u) = setup()?;
        let tr = SchwarzSolver::new(
            SchwarzConfig::new(p, Variant::Projection { order: 20 }, Mode::Additive, 60, 1e-10, 101)?,
            u.boundary_data(),
        )
        .run(None)?;
        Ok((tr.converged, format!("{} sweeps, rate {:.4}", tr.sweeps, observed_rate(&tr.updates)?)))
    })()));

    out.push(check(S, "interpolation_rate_and_nodes", (|| {
        let (p, u) = setup()?;
        let s = snap_pair(&p, GridConfig::for_order(20, p.radius(), 1.0)?)?;
        let bound = interp_contraction_bound(&s)?;
        let f = u.function();
        let reference = move |x: f64, y: f64| f(x, y);
        let solver = SchwarzSolver::new(
            SchwarzConfig::new(p, Variant::Interpolation(s), Mode::Additive, 200, 1e-12, 101)?,
            u.boundary_data(),
        );
        let tr = solver.run(Some(&reference))?;
        let rate = observed_rate(&tr.updates)?;
        let zero = tr.intersection_errors.as_ref().is_some_and(|v| v.iter().all(|&e| e == 0.0));
        Ok((
            rate <= bound + 0.02 && zero && tr.converged,
            format!("rate {rate:.4} vs bound + 0.02 = {:.4}; intersection-node errors zero: {zero}", bound + 0.02),
        ))
    })()));

    out
}

/// `true` iff every outcome passed.
pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}
