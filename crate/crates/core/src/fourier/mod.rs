//! Boundary functions on circles, Fourier projection and trigonometric
//! interpolation, harmonic extension and Poisson integrals.

mod boundary;
mod interp;
mod poisson;

use std::f64::consts::PI;

pub use boundary::{arc_fn, ArcFn, BoundaryBuilder, BoundaryFn, Junction};
pub use interp::{interpolate, interpolate_fft, interpolation_nodes, InterpMatrices};
pub use poisson::{
    arc_value_oracle, curve_limit, curve_limit_verify, poisson_eval, POISSON_R_MAX,
};

use crate::error::{domain, Error, Result};
use crate::quad::{self, gl16};

/// Finite trigonometric series `½A_0 + Σ (A_n cos nθ + B_n sin nθ)`,
/// optionally with a Nyquist term `½ c cos((N+1)θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoeffs {
    a0: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    nyquist: Option<f64>,
}

impl FourierCoeffs {
    pub fn new(a0: f64, a: Vec<f64>, b: Vec<f64>, nyquist: Option<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidInput(format!(
                "cosine and sine coefficient counts differ: {} vs {}",
                a.len(),
                b.len()
            )));
        }
        Ok(Self { a0, a, b, nyquist })
    }

    pub fn zeros(order: usize, with_nyquist: bool) -> Self {
        Self {
            a0: 0.0,
            a: vec![0.0; order],
            b: vec![0.0; order],
            nyquist: with_nyquist.then_some(0.0),
        }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn nyquist(&self) -> Option<f64> {
        self.nyquist
    }

    /// Largest coefficient magnitude difference; orders and Nyquist presence
    /// must agree, otherwise infinity.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.order() != other.order() || self.nyquist.is_some() != other.nyquist.is_some() {
            return f64::INFINITY;
        }
        let mut d = (self.a0 - other.a0).abs();
        for (x, y) in self.a.iter().zip(&other.a).chain(self.b.iter().zip(&other.b)) {
            d = d.max((x - y).abs());
        }
        if let (Some(x), Some(y)) = (self.nyquist, other.nyquist) {
            d = d.max((x - y).abs());
        }
        d
    }

    /// Harmonic extension at `(θ, r)`, no range check on `r`.
    pub fn eval_harmonic(&self, theta: f64, r: f64) -> f64 {
        let (s1, c1) = theta.sin_cos();
        let (mut c, mut s) = (1.0, 0.0);
        let mut rn = 1.0;
        let mut sum = 0.5 * self.a0;
        for (an, bn) in self.a.iter().zip(&self.b) {
            let cn = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = cn;
            rn *= r;
            sum += rn * (an * c + bn * s);
        }
        if let Some(ny) = self.nyquist {
            let cn = c * c1 - s * s1;
            sum += 0.5 * ny * rn * r * cn;
        }
        sum
    }

    /// Boundary trace `S_N(θ)`.
    pub fn eval(&self, theta: f64) -> f64 {
        self.eval_harmonic(theta, 1.0)
    }
}

/// `½A_0 + Σ rⁿ(A_n cos nθ + B_n sin nθ)` for `r ∈ [0, 1]`.
pub fn harmonic_eval(coeffs: &FourierCoeffs, theta: f64, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(domain(format!("harmonic_eval needs 0 <= r <= 1, got {r}")));
    }
    Ok(coeffs.eval_harmonic(theta, r))
}

/// Accumulates `(1/π)∫ g cos nθ`, `(1/π)∫ g sin nθ` with `panels_per_radian`
/// GL16 panels on each smooth arc. Also returns `(1/π)∫|g|`.
fn project_with(g: &BoundaryFn, order: usize, panels_per_radian: f64) -> (FourierCoeffs, f64) {
    let mut a = vec![0.0; order + 1];
    let mut b = vec![0.0; order + 1];
    let mut l1 = 0.0;
    let rule = gl16();
    for (lo, hi, f) in g.smooth_arcs() {
        let panels = ((hi - lo) * panels_per_radian).ceil().max(1.0) as usize;
        let h = (hi - lo) / panels as f64;
        for p in 0..panels {
            let pa = lo + p as f64 * h;
            let pb = if p + 1 == panels { hi } else { pa + h };
            for (x, w) in rule.mapped(pa, pb) {
                let v = f(x) * w;
                l1 += v.abs();
                let (s1, c1) = x.sin_cos();
                let (mut c, mut s) = (1.0, 0.0);
                a[0] += v;
                for n in 1..=order {
                    let cn = c * c1 - s * s1;
                    s = s * c1 + c * s1;
                    c = cn;
                    a[n] += v * c;
                    b[n] += v * s;
                }
            }
        }
    }
    let a0 = a[0] / PI;
    let coeffs = FourierCoeffs {
        a0,
        a: a[1..].iter().map(|x| x / PI).collect(),
        b: b[1..].iter().map(|x| x / PI).collect(),
        nyquist: None,
    };
    (coeffs, l1 / PI)
}

/// Fourier projection `P_N g` by composite Gauss–Legendre quadrature on each
/// smooth arc of `g`.
///
/// The panel density grows with `N`; it is doubled until two successive
/// coefficient sets agree to `1e-10` relative to `(1/π)‖g‖_1`.
pub fn project(g: &BoundaryFn, order: usize) -> Result<FourierCoeffs> {
    let mut density = (order as f64 + 1.0) / 6.0 + 1.0;
    let (mut prev, _) = project_with(g, order, density);
    for _ in 0..14 {
        density *= 2.0;
        let (next, l1) = project_with(g, order, density);
        let diff = prev.max_abs_diff(&next);
        if diff <= 1e-10 * l1 {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Quadrature(format!(
        "Fourier coefficients of order {order} did not settle to 1e-10"
    )))
}

/// `(1/2π)∫|D_N|` with `D_N(θ) = sin((N+½)θ)/sin(θ/2)`, integrated between
/// consecutive zeros.
pub fn lebesgue_constant(order: usize) -> Result<f64> {
    if order < 1 {
        return Err(domain("Lebesgue constant needs N >= 1"));
    }
    let n = order as f64 + 0.5;
    let mut pts: Vec<f64> = (0..=order).map(|k| 2.0 * PI * k as f64 / (2.0 * n)).collect();
    pts.push(PI);
    let dk = |t: f64| {
        if t == 0.0 {
            2.0 * n
        } else {
            ((n * t).sin() / (0.5 * t).sin()).abs()
        }
    };
    let tol = quad::Tolerance {
        abs: 0.0,
        rel: 1e-12,
        max_panels: 4 * order + 100,
    };
    Ok(quad::adaptive(dk, &pts, tol)? / PI)
}
