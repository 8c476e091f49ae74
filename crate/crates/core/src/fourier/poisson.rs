use std::f64::consts::{PI, TAU};

use super::BoundaryFn;
use crate::error::{domain, Error, Result};
use crate::kernels::poisson_kernel_unchecked;
use crate::quad::{self, Tolerance};

/// Largest radius accepted by [`poisson_eval`].
pub const POISSON_R_MAX: f64 = 1.0 - 1e-6;

/// Harmonic extension of `g` at `(θ, r)` via the Poisson integral.
///
/// Quadrature runs over `[θ - π, θ + π]`, split at the junctions and knots of
/// `g` and at `θ ± (1 - r)·4^k`, so every panel sees the kernel peak at a
/// bounded relative scale.
pub fn poisson_eval(g: &BoundaryFn, theta: f64, r: f64) -> Result<f64> {
    if !(r >= 0.0) || !theta.is_finite() {
        return Err(domain(format!("poisson_eval needs finite theta and r >= 0, got ({theta}, {r})")));
    }
    if r > POISSON_R_MAX {
        return Err(Error::Quadrature(format!(
            "r = {r} beyond the Poisson quadrature cutoff {POISSON_R_MAX}; use a series method"
        )));
    }
    let (lo, hi) = (theta - PI, theta + PI);
    let mut pts = g.split_points(lo, hi);
    if r > 0.0 {
        pts.push(theta);
        let mut d = 1.0 - r;
        while d < PI {
            pts.push(theta - d);
            pts.push(theta + d);
            d *= 4.0;
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);
    }
    let tol = Tolerance {
        abs: 1e-13,
        rel: 1e-11,
        max_panels: 20_000,
    };
    let v = quad::adaptive(
        |t| poisson_kernel_unchecked(theta - t, r) * g.eval(t),
        &pts,
        tol,
    )?;
    Ok(v / TAU)
}

/// Value `(θ̃* - θ*)/π` of the harmonic extension of `χ_[-θ*, θ*]` on the
/// circular arc through `e^{±iθ*}` that meets `∂B` at polar angle `θ̃*` of its
/// own centre.
pub fn arc_value_oracle(theta_star: f64, theta_tilde_star: f64) -> Result<f64> {
    if !(theta_star > 0.0 && theta_star <= theta_tilde_star && theta_tilde_star < PI) {
        return Err(domain(format!(
            "need 0 < theta* <= theta_tilde* < pi, got ({theta_star}, {theta_tilde_star})"
        )));
    }
    Ok((theta_tilde_star - theta_star) / PI)
}

/// Limit of the harmonic extension at a jump `(g⁻, g⁺)` along a curve
/// leaving the boundary with slope `θ'(1) = slope`; `side` is the sign of
/// `θ` on the curve.
pub fn curve_limit(g_minus: f64, g_plus: f64, slope: f64, side: f64) -> f64 {
    let beta = (1.0 / (1.0 + slope * slope).sqrt()).acos();
    0.5 * (g_plus + g_minus) + (g_plus - g_minus) * side.signum() * beta / PI
}

/// Extrapolates `u(θ(r), r)` along `θ(r) = slope·(1 - r)` from
/// `r = 1 - 2^{-k}`, `k = 3, 4, ...` (`levels` values) and returns the
/// distance to [`curve_limit`] at the jump located at angle 0.
pub fn curve_limit_verify(g: &BoundaryFn, slope: f64, levels: usize) -> Result<f64> {
    let (gm, gp) = g
        .one_sided_limits(0.0)
        .ok_or_else(|| Error::InvalidInput("boundary function has no junction at 0".into()))?;
    if levels < 2 {
        return Err(Error::InvalidInput("need at least two refinement levels".into()));
    }
    let mut hs = Vec::with_capacity(levels);
    let mut us = Vec::with_capacity(levels);
    for k in 3..3 + levels {
        let h = 0.5f64.powi(k as i32);
        hs.push(h);
        us.push(poisson_eval(g, slope * h, 1.0 - h)?);
    }
    let limit = neville_at_zero(&hs, &us);
    let side = if slope < 0.0 { -1.0 } else { 1.0 };
    Ok((limit - curve_limit(gm, gp, slope, side)).abs())
}

/// Value at 0 of the polynomial interpolating `(x_i, y_i)`.
fn neville_at_zero(x: &[f64], y: &[f64]) -> f64 {
    let mut p = y.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::super::arc_fn;
    use super::*;
    use crate::geometry::discs_from_center_radius;

    #[test]
    fn constant_data_reproduced() {
        let g = BoundaryFn::constant(2.5);
        for (t, r) in [(0.0, 0.0), (1.0, 0.5), (-2.0, 0.999), (3.0, 1.0 - 1e-5)] {
            assert!((poisson_eval(&g, t, r).unwrap() - 2.5).abs() < 1e-10);
        }
        assert!(poisson_eval(&g, 0.0, 1.0 - 1e-7).is_err());
    }

    #[test]
    fn smooth_data_matches_harmonic_polynomial() {
        // Boundary data cos 2θ extends to r² cos 2θ.
        let g = BoundaryFn::from_fn(arc_fn(|t| (2.0 * t).cos()));
        for (t, r) in [(0.3f64, 0.2f64), (2.0, 0.9), (-1.0, 0.999)] {
            let want = r * r * (2.0 * t).cos();
            assert!((poisson_eval(&g, t, r).unwrap() - want).abs() < 1e-9);
        }
    }

    #[test]
    fn arc_value_on_other_disc_boundary() {
        let p = discs_from_center_radius(1.4, 1.2).unwrap();
        let g = BoundaryFn::arc_indicator(p.theta1_star()).unwrap();
        let want = arc_value_oracle(p.theta1_star(), p.theta2_star()).unwrap();
        for k in 1..20 {
            let tt = p.theta2_star() + (std::f64::consts::TAU - 2.0 * p.theta2_star()) * k as f64 / 20.0;
            let (x, y) = (p.m() + p.radius() * tt.cos(), p.radius() * tt.sin());
            let v = poisson_eval(&g, y.atan2(x), x.hypot(y)).unwrap();
            assert!((v - want).abs() < 1e-6, "k = {k}: {v}");
        }
        assert_eq!(arc_value_oracle(0.5, 0.5).unwrap(), 0.0);
        assert!(arc_value_oracle(0.5, 0.4).is_err());
    }

    #[test]
    fn curve_limit_values() {
        assert_eq!(curve_limit(0.0, 1.0, 0.0, 1.0), 0.5);
        assert!((curve_limit(0.0, 1.0, 1.0, 1.0) - 0.75).abs() < 1e-15);
        assert!((curve_limit(0.0, 1.0, -1.0, -1.0) - 0.25).abs() < 1e-15);
        assert!((curve_limit(2.0, 4.0, 1e12, 1.0) - 4.0).abs() < 1e-9);
    }

    #[test]
    fn curve_limit_verified_by_quadrature() {
        let g = BoundaryFn::builder(0.0)
            .piece(2.0, arc_fn(|_| 1.0))
            .piece(TAU, arc_fn(|_| 0.0))
            .build()
            .unwrap();
        for slope in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let d = curve_limit_verify(&g, slope, 8).unwrap();
            assert!(d < 1e-2, "slope {slope}: {d}");
        }
    }

    #[test]
    fn neville_recovers_polynomial() {
        let x = [0.5, 0.25, 0.125, 0.0625];
        let y: Vec<f64> = x.iter().map(|t| 3.0 - 2.0 * t + t * t * t).collect();
        assert!((neville_at_zero(&x, &y) - 3.0).abs() < 1e-13);
    }
}
