//! Poisson kernel, the truncated kernel `K_N`, its positivity radius and the
//! ε integrals that control the projection variant near `∂B1`.

use std::f64::consts::{E, PI, TAU};

use crate::error::{domain, Error, Result};
use crate::quad;

/// `(1 - r²) / (1 - 2r cos ψ + r²)` for `0 ≤ r < 1`.
pub fn poisson_kernel(psi: f64, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(domain(format!("Poisson kernel needs 0 <= r < 1, got {r}")));
    }
    Ok(poisson_kernel_unchecked(psi, r))
}

#[inline]
pub(crate) fn poisson_kernel_unchecked(psi: f64, r: f64) -> f64 {
    // 1 - 2r cos ψ + r² = (1 - r)² + 4r sin²(ψ/2), free of cancellation near ψ = 0.
    let s = (0.5 * psi).sin();
    (1.0 - r * r) / ((1.0 - r) * (1.0 - r) + 4.0 * r * s * s)
}

/// Fourier truncation of the Poisson kernel at order `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedKernel {
    order: usize,
}

/// Below this denominator the closed form loses digits; the partial sum is used.
const CLOSED_FORM_MIN_DENOM: f64 = 1e-2;

impl TruncatedKernel {
    pub fn new(order: usize) -> Result<Self> {
        if order < 1 {
            return Err(domain("truncation order must be at least 1"));
        }
        Ok(Self { order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `1 + 2 Σ_{n≤N} cos(nψ) rⁿ` by the Chebyshev-style recurrence.
    pub fn partial_sum(&self, psi: f64, r: f64) -> f64 {
        let (s1, c1) = psi.sin_cos();
        let (mut c, mut s) = (1.0, 0.0);
        let mut rn = 1.0;
        let mut sum = 1.0;
        for _ in 0..self.order {
            let cn = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = cn;
            rn *= r;
            sum += 2.0 * c * rn;
        }
        sum
    }

    /// Closed form `(1 - r² - 2r^{N+1}cos((N+1)ψ) + 2r^{N+2}cos(Nψ)) / (1 - 2r cos ψ + r²)`.
    pub fn closed_form(&self, psi: f64, r: f64) -> f64 {
        let n = self.order as f64;
        let s = (0.5 * psi).sin();
        let denom = (1.0 - r) * (1.0 - r) + 4.0 * r * s * s;
        let rn1 = r.powi(self.order as i32 + 1);
        let num = 1.0 - r * r - 2.0 * rn1 * ((n + 1.0) * psi).cos()
            + 2.0 * rn1 * r * (n * psi).cos();
        num / denom
    }

    /// Evaluates `K_N(ψ, r)` for `0 ≤ r ≤ 1`.
    pub fn eval(&self, psi: f64, r: f64) -> f64 {
        let s = (0.5 * psi).sin();
        let denom = (1.0 - r) * (1.0 - r) + 4.0 * r * s * s;
        if denom >= CLOSED_FORM_MIN_DENOM {
            self.closed_form(psi, r)
        } else {
            self.partial_sum(psi, r)
        }
    }
}

/// `K_N(ψ, r)` with parameter checks.
pub fn truncated_kernel(order: usize, psi: f64, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(domain(format!("K_N needs 0 <= r <= 1, got {r}")));
    }
    Ok(TruncatedKernel::new(order)?.eval(psi, r))
}

fn alpha(order: usize) -> f64 {
    let n1 = order as f64 + 1.0;
    2.0 * (2.0 * n1).ln() / n1
}

/// `r_N* = (1 - 2 ln(2(N+1))/(N+1))^{1/2}`, below which `K_N ≥ 0`.
pub fn positivity_radius_theory(order: usize) -> Result<f64> {
    if order < 4 {
        return Err(domain(format!("positivity radius needs N >= 4, got {order}")));
    }
    Ok((1.0 - alpha(order)).sqrt())
}

/// Result of a numerical positivity scan of `K_N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityReport {
    pub order: usize,
    pub r_star_theory: f64,
    pub delta_theory: f64,
    pub delta_numeric: f64,
    pub q: f64,
    /// (angle step, radius tolerance)
    pub scan_resolution: (f64, f64),
}

/// Minimum of `K_N(·, r)` over `angles` samples of `[0, π]` (`K_N` is even).
fn grid_min(kernel: &TruncatedKernel, angles: &[f64], r: f64) -> f64 {
    angles
        .iter()
        .map(|&t| kernel.eval(t, r))
        .fold(f64::INFINITY, f64::min)
}

/// Scans for the smallest boundary distance `δ` such that `K_N ≥ 0` on the
/// sampled angles for every `r ≤ 1 - δ`.
///
/// The radius is marched outward in steps of 0.002 to the first sign change
/// of the grid minimum, which is then bisected to `radius_tol`.
pub fn positivity_radius_numeric(
    order: usize,
    angle_steps: usize,
    radius_tol: f64,
) -> Result<PositivityReport> {
    let r_theory = positivity_radius_theory(order)?;
    if angle_steps < 4 * order {
        return Err(Error::Resolution(format!(
            "angle_steps = {angle_steps} below 4N = {}",
            4 * order
        )));
    }
    if !(radius_tol > 0.0) {
        return Err(domain("radius_tol must be positive"));
    }
    let kernel = TruncatedKernel::new(order)?;
    let h = PI / angle_steps as f64;
    let angles: Vec<f64> = (0..=angle_steps).map(|j| j as f64 * h).collect();

    const STEP: f64 = 0.002;
    let mut lo = 0.0;
    let mut hi = None;
    let mut r = 0.0;
    while r < 1.0 {
        let next = (r + STEP).min(1.0);
        if grid_min(&kernel, &angles, next) < 0.0 {
            lo = r;
            hi = Some(next);
            break;
        }
        r = next;
    }
    let Some(mut hi) = hi else {
        return Err(Error::Resolution(format!(
            "no sign change of K_{order} found on {angle_steps} angles"
        )));
    };
    while hi - lo > radius_tol {
        let mid = 0.5 * (lo + hi);
        if grid_min(&kernel, &angles, mid) < 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let delta_theory = 1.0 - r_theory;
    let delta_numeric = 1.0 - lo;
    Ok(PositivityReport {
        order,
        r_star_theory: r_theory,
        delta_theory,
        delta_numeric,
        q: delta_numeric / delta_theory,
        scan_resolution: (h, radius_tol),
    })
}

/// Smallest `K_N` value on the tensor grid of `angles` uniform angles on
/// `[0, 2π)` and `radii` uniform radii on `[0, r_max]`, with its location
/// `(value, θ, r)`.
pub fn kernel_grid_minimum(order: usize, angles: usize, radii: usize, r_max: f64) -> Result<(f64, f64, f64)> {
    if angles == 0 || radii < 2 {
        return Err(Error::InvalidInput("need at least one angle and two radii".into()));
    }
    let kernel = TruncatedKernel::new(order)?;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..radii {
        let r = r_max * i as f64 / (radii - 1) as f64;
        for j in 0..angles {
            let t = TAU * j as f64 / angles as f64;
            let v = kernel.eval(t, r);
            if v < best.0 {
                best = (v, t, r);
            }
        }
    }
    Ok(best)
}

/// `ε(r) = (2/π) ∫_0^r s^N/(1 - s) ds` by adaptive Gauss–Legendre.
pub fn epsilon_quadrature(order: usize, r_upper: f64) -> Result<f64> {
    if order < 1 {
        return Err(domain("order must be at least 1"));
    }
    if !(0.0..1.0).contains(&r_upper) {
        return Err(domain(format!("r_upper = {r_upper} must lie in [0, 1)")));
    }
    if r_upper == 0.0 {
        return Ok(0.0);
    }
    let n = order as i32;
    let tol = quad::Tolerance {
        abs: 0.0,
        rel: 1e-10,
        max_panels: 2000,
    };
    let v = quad::adaptive(|s| s.powi(n) / (1.0 - s), &[0.0, r_upper], tol)?;
    Ok(2.0 / PI * v)
}

/// Upper bound `(1/π) ln(2/α) / sqrt(1 - α) / (N+1)` on `ε(r_N*)`, with
/// `α = 2 ln(2(N+1))/(N+1)`.
pub fn epsilon_bound(order: usize) -> Result<f64> {
    if order < 4 {
        return Err(domain(format!("epsilon bound needs N >= 4, got {order}")));
    }
    let a = alpha(order);
    if a >= 1.0 {
        return Err(domain(format!("alpha(N) = {a} >= 1")));
    }
    Ok((2.0 / a).ln() / (1.0 - a).sqrt() / (order as f64 + 1.0) / PI)
}

/// Principal branch of the Lambert W function on `z ≥ 0`.
pub fn lambert_w(z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(domain(format!("lambert_w needs finite z >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let mut w = z.ln_1p();
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        let next = w - step;
        // The iterates stay positive for z > 0; guard against overshoot anyway.
        w = if next > 0.0 { next } else { 0.5 * w };
        if step.abs() <= 4.0 * f64::EPSILON * w.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(w)
}

/// Outcome of the elementary inequality chain behind the positivity radius.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub x: f64,
    pub y0: f64,
    pub y0_hat: f64,
    /// `y0 - 4(1 - y0)^x`
    pub residual: f64,
    /// Names of failed sub-inequalities; empty when all hold.
    pub failures: Vec<&'static str>,
}

impl InequalityCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Hoorfar bounds `ln z - ln ln z ≤ W(z) ≤ ln z - ½ ln ln z` (valid for `z ≥ e`).
pub fn hoorfar_sandwich(z: f64) -> Result<bool> {
    if !(z >= E - 1e-12) {
        return Err(domain(format!("Hoorfar bounds need z >= e, got {z}")));
    }
    let w = lambert_w(z)?;
    let (l1, l2) = (z.ln(), z.ln().ln().max(0.0));
    let slack = 1e-12 * w.max(1.0);
    Ok(l1 - l2 <= w + slack && w <= l1 - 0.5 * l2 + slack)
}

/// Checks `y0 - 4(1 - y0)^x ≥ 0`, `ŷ0 ≥ y0`, `ŷ0 < 1` and the Hoorfar
/// sandwich at `z = 4x`, where `x = (N+1)/2`, `y0 = 4e^{-W(4x)}`,
/// `ŷ0 = ln(4x)/x`.
pub fn verify_positivity_inequality(order: usize) -> Result<InequalityCheck> {
    if order < 4 {
        return Err(domain(format!("inequality check needs N >= 4, got {order}")));
    }
    let x = (order as f64 + 1.0) / 2.0;
    let w = lambert_w(4.0 * x)?;
    let y0 = 4.0 * (-w).exp();
    let y0_hat = (4.0 * x).ln() / x;
    let residual = y0 - 4.0 * (1.0 - y0).powf(x);
    let mut failures = Vec::new();
    if residual < -1e-12 {
        failures.push("y0 - 4(1-y0)^x >= 0");
    }
    if y0_hat < y0 {
        failures.push("y0_hat >= y0");
    }
    if y0_hat >= 1.0 {
        failures.push("y0_hat < 1");
    }
    if !hoorfar_sandwich(4.0 * x)? {
        failures.push("Hoorfar sandwich at z = 4x");
    }
    Ok(InequalityCheck {
        x,
        y0,
        y0_hat,
        residual,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Tail series (2/π) Σ_{n>N} rⁿ/n, an expansion of ε independent of quadrature.
    fn epsilon_series(order: usize, r: f64) -> f64 {
        let mut sum = 0.0;
        let mut rn = r.powi(order as i32);
        let mut n = order;
        loop {
            n += 1;
            rn *= r;
            let t = rn / n as f64;
            sum += t;
            if t < 1e-18 * sum {
                break;
            }
        }
        2.0 / PI * sum
    }

    #[test]
    fn poisson_kernel_values() {
        assert_eq!(poisson_kernel(1.3, 0.0).unwrap(), 1.0);
        assert!((poisson_kernel(0.0, 0.5).unwrap() - 3.0).abs() < 1e-15);
        assert!(poisson_kernel(0.0, 1.0).is_err());
    }

    #[test]
    fn poisson_kernel_mean_is_one() {
        for r in [0.1, 0.5, 0.9] {
            let m = 400;
            let s: f64 = (0..m)
                .map(|j| poisson_kernel(TAU * j as f64 / m as f64, r).unwrap())
                .sum::<f64>()
                / m as f64;
            assert!((s - 1.0).abs() < 1e-12, "r = {r}: {s}");
        }
    }

    #[test]
    fn truncated_kernel_at_zero_angle() {
        for n in [1, 5, 30] {
            for r in [0.0f64, 0.3, 0.9, 1.0] {
                let want = if r == 1.0 {
                    1.0 + 2.0 * n as f64
                } else {
                    1.0 + 2.0 * r * (1.0 - r.powi(n as i32)) / (1.0 - r)
                };
                let got = truncated_kernel(n, 0.0, r).unwrap();
                assert!((got - want).abs() < 1e-12 * want, "N={n} r={r}");
            }
        }
        assert_eq!(truncated_kernel(7, 2.0, 0.0).unwrap(), 1.0);
        assert!(truncated_kernel(0, 0.0, 0.5).is_err());
    }

    #[test]
    fn positivity_radius_values() {
        assert!((positivity_radius_theory(4).unwrap() - 0.2810).abs() < 1e-4);
        assert!((positivity_radius_theory(40).unwrap() - 0.8860).abs() < 1e-4);
        assert!((positivity_radius_theory(5).unwrap() - 0.41436).abs() < 1e-5);
        assert!(positivity_radius_theory(3).is_err());
        let mut prev = 0.0;
        for n in 4..=200 {
            let r = positivity_radius_theory(n).unwrap();
            assert!(r > prev);
            prev = r;
        }
    }

    #[test]
    fn numeric_radius_is_below_theory_distance() {
        for n in [4, 10, 37] {
            let rep = positivity_radius_numeric(n, 4 * n, 1e-5).unwrap();
            assert!(rep.delta_numeric > 0.0);
            assert!(rep.q > 0.0 && rep.q <= 1.0, "N = {n}: q = {}", rep.q);
        }
        assert!(matches!(
            positivity_radius_numeric(10, 39, 1e-5),
            Err(Error::Resolution(_))
        ));
    }

    #[test]
    fn epsilon_matches_tail_series() {
        for n in [1, 5, 10, 40, 80] {
            for r in [0.2, 0.6, 0.95, positivity_radius_theory(n.max(4)).unwrap()] {
                let q = epsilon_quadrature(n, r).unwrap();
                let s = epsilon_series(n, r);
                assert!((q - s).abs() <= 1e-9 * s, "N={n} r={r}: {q} vs {s}");
            }
        }
        assert!(epsilon_quadrature(5, 1.0).is_err());
    }

    #[test]
    fn epsilon_table_values() {
        // Frozen from the tail series oracle.
        let rows = [
            (5, 0.000838, 0.1129),
            (10, 0.001592, 0.0555),
            (20, 0.001300, 0.0326),
            (30, 0.001013, 0.0242),
            (40, 0.000821, 0.01954),
            (60, 0.000589, 0.01445),
            (80, 0.000456, 0.01163),
        ];
        for (n, eps, bound) in rows {
            let r = positivity_radius_theory(n).unwrap();
            let e = epsilon_quadrature(n, r).unwrap();
            let b = epsilon_bound(n).unwrap();
            assert!((e - eps).abs() < 1e-6, "N={n}: eps {e}");
            assert!((b - bound).abs() < 1e-4, "N={n}: bound {b}");
            assert!(e <= b);
        }
    }

    #[test]
    fn epsilon_at_shifted_radius() {
        let r = (1.0 - 2.0 / 11.0f64).sqrt();
        let e = epsilon_quadrature(10, r).unwrap();
        assert!((e - 0.13).abs() < 0.005, "{e}");
    }

    #[test]
    fn lambert_w_identities() {
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!((lambert_w(E).unwrap() - 1.0).abs() < 1e-15);
        let l5 = 5f64.ln();
        assert!((lambert_w(5.0 * l5).unwrap() - l5).abs() < 1e-14);
        assert!(lambert_w(-1.0).is_err());
    }

    #[test]
    fn hoorfar_points() {
        for z in [E, 10.0, 100.0, 1e4] {
            assert!(hoorfar_sandwich(z).unwrap(), "z = {z}");
        }
    }

    #[test]
    fn inequality_chain_holds() {
        for n in [4, 5, 10, 50, 100] {
            let c = verify_positivity_inequality(n).unwrap();
            assert!(c.holds(), "N = {n}: {:?}", c.failures);
        }
        let c = verify_positivity_inequality(4).unwrap();
        assert!((c.x - 2.5).abs() < 1e-15);
    }
}
