//! Dirichlet-to-Dirichlet maps from `Γ1` data to traces on `Γ2`, in exact,
//! projection and interpolation form, and the masked ℓ1 bounds of the
//! interpolation variant.

use std::f64::consts::{PI, TAU};

use nalgebra::DVector;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier::{
    arc_fn, interpolate, poisson_eval, project, ArcFn, BoundaryFn, InterpMatrices,
};
use crate::geometry::{gamma2_to_b1_polar, DiscPair, SnappedScenario};
use crate::kernels::positivity_radius_theory;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtDVariant {
    Exact,
    Projection,
    Interpolation,
    InterpolationBound,
}

impl DtDVariant {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Projection => "projection",
            Self::Interpolation => "interpolation",
            Self::InterpolationBound => "interpolation_bound",
        }
    }
}

/// Values of a map (or bound) sampled along `Γ2`, parameterized by the
/// `B2` polar angle `θ̃`.
#[derive(Debug, Clone, PartialEq)]
pub struct DtDProfile {
    pub scenario: DiscPair,
    pub variant: DtDVariant,
    pub order: Option<usize>,
    pub thetas: Vec<f64>,
    pub values: Vec<f64>,
    /// `B1` radius of each sample point.
    pub radii: Vec<f64>,
    /// Samples that coincide with nodes of `G_{2,n2}`.
    pub grid_marks: Option<Vec<bool>>,
    /// Values at `θ̃ = θ2*` and `θ̃ = 2π - θ2*`.
    pub endpoints: (f64, f64),
}

impl DtDProfile {
    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Flags samples inside `B1⁺(N) = {r ≤ r_N*}`.
    pub fn in_b1_plus(&self, order: usize) -> Result<Vec<bool>> {
        let rs = positivity_radius_theory(order)?;
        Ok(self.radii.iter().map(|&r| r <= rs).collect())
    }

    /// Largest deviation from `target` among samples with `r ≤ r_N*`, or
    /// `None` when no sample qualifies.
    pub fn plateau_deviation(&self, order: usize, target: f64) -> Result<Option<f64>> {
        let flags = self.in_b1_plus(order)?;
        Ok(self
            .values
            .iter()
            .zip(&flags)
            .filter(|(_, &f)| f)
            .map(|(v, _)| (v - target).abs())
            .reduce(f64::max))
    }
}

/// Uniform samples of the open arc `Γ2`, offset from both ends by
/// `(arc length)/(10·samples)`.
pub fn gamma2_open_samples(pair: &DiscPair, samples: usize) -> Vec<f64> {
    let lo = pair.theta2_star();
    let arc = TAU - 2.0 * lo;
    let off = arc / (10.0 * samples as f64);
    let step = (arc - 2.0 * off) / (samples - 1) as f64;
    (0..samples).map(|k| lo + off + k as f64 * step).collect()
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 16 {
        return Err(Error::InvalidInput(format!("need at least 16 samples, got {samples}")));
    }
    Ok(())
}

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

/// Limit of `f(θ̃)` as `θ̃` approaches `end` from inside the arc
/// (`dir = ±1`), by polynomial extrapolation of samples at geometric offsets.
fn one_sided_extrapolation<F>(f: F, end: f64, dir: f64, scale: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let hs: Vec<f64> = (0..5).map(|k| scale * 0.5f64.powi(k)).collect();
    let ys = hs
        .iter()
        .map(|&h| f(end + dir * h))
        .collect::<Result<Vec<f64>>>()?;
    Ok(neville_at_zero(&hs, &ys))
}

/// `L1 v`: Poisson extension of `(0, v)` on `B1` restricted to `Γ2`.
pub fn dtd_exact_profile(pair: &DiscPair, v: ArcFn, samples: usize) -> Result<DtDProfile> {
    check_samples(samples)?;
    let g = BoundaryFn::arc_extension(pair.theta1_star(), v)?;
    let thetas = gamma2_open_samples(pair, samples);
    let eval = |tt: f64| -> Result<(f64, f64)> {
        let (t, r) = gamma2_to_b1_polar(pair, tt)?;
        Ok((poisson_eval(&g, t, r)?, r))
    };
    let pts = thetas
        .par_iter()
        .map(|&tt| eval(tt))
        .collect::<Result<Vec<_>>>()?;
    let arc = TAU - 2.0 * pair.theta2_star();
    let scale = arc * 0.01;
    let lo = pair.theta2_star();
    let left = one_sided_extrapolation(|tt| eval(tt).map(|x| x.0), lo, 1.0, scale)?;
    let right = one_sided_extrapolation(|tt| eval(tt).map(|x| x.0), TAU - lo, -1.0, scale)?;
    Ok(DtDProfile {
        scenario: *pair,
        variant: DtDVariant::Exact,
        order: None,
        values: pts.iter().map(|p| p.0).collect(),
        radii: pts.iter().map(|p| p.1).collect(),
        thetas,
        grid_marks: None,
        endpoints: (left, right),
    })
}

/// `L_{1,N} v`: harmonic extension of `P_N(0, v)` restricted to `Γ2`.
pub fn dtd_projection_profile(
    pair: &DiscPair,
    order: usize,
    v: ArcFn,
    samples: usize,
) -> Result<DtDProfile> {
    if order < 1 {
        return Err(Error::InvalidInput("projection order must be at least 1".into()));
    }
    check_samples(samples)?;
    let g = BoundaryFn::arc_extension(pair.theta1_star(), v)?;
    let coeffs = project(&g, order)?;
    let thetas = gamma2_open_samples(pair, samples);
    let pts = thetas
        .iter()
        .map(|&tt| {
            let (t, r) = gamma2_to_b1_polar(pair, tt)?;
            Ok((coeffs.eval_harmonic(t, r), r))
        })
        .collect::<Result<Vec<_>>>()?;
    let t1 = pair.theta1_star();
    Ok(DtDProfile {
        scenario: *pair,
        variant: DtDVariant::Projection,
        order: Some(order),
        values: pts.iter().map(|p| p.0).collect(),
        radii: pts.iter().map(|p| p.1).collect(),
        thetas,
        grid_marks: None,
        endpoints: (coeffs.eval(t1), coeffs.eval(-t1)),
    })
}

/// Mode vectors `c = [½, r cos θ, ..., r^{h-1} cos((h-1)θ), ½ r^h cos(hθ)]`
/// and `s = [r sin θ, ..., r^{h-1} sin((h-1)θ)]` with `h = n/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeVectors {
    pub c: DVector<f64>,
    pub s: DVector<f64>,
}

impl ModeVectors {
    pub fn new(n: usize, theta: f64, r: f64) -> Self {
        let h = n / 2;
        let mut c = DVector::zeros(h + 1);
        let mut s = DVector::zeros(h - 1);
        c[0] = 0.5;
        let mut rn = 1.0;
        for j in 1..=h {
            rn *= r;
            let (sj, cj) = (j as f64 * theta).sin_cos();
            if j < h {
                c[j] = rn * cj;
                s[j - 1] = rn * sj;
            } else {
                c[j] = 0.5 * rn * cj;
            }
        }
        Self { c, s }
    }
}

/// Node indicator for `int(Γ1)` on `G_{1,n1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMask {
    pub n1: usize,
    pub interior_flags: Vec<bool>,
}

impl QMask {
    pub fn new(snapped: &SnappedScenario) -> Self {
        let n1 = snapped.grid().n1();
        Self {
            n1,
            interior_flags: (0..n1).map(|j| snapped.is_gamma1_interior(j)).collect(),
        }
    }

    pub fn apply(&self, w: &mut [f64]) {
        for (x, &keep) in w.iter_mut().zip(&self.interior_flags) {
            if !keep {
                *x = 0.0;
            }
        }
    }
}

/// The map `(θ, r) ↦ Q(C c(θ, r) + S s(θ, r))` for a snapped scenario.
#[derive(Debug, Clone)]
pub struct InterpolationOperator {
    snapped: SnappedScenario,
    matrices: InterpMatrices,
    mask: QMask,
}

impl InterpolationOperator {
    pub fn new(snapped: &SnappedScenario) -> Result<Self> {
        Ok(Self {
            snapped: *snapped,
            matrices: InterpMatrices::new(snapped.grid().n1())?,
            mask: QMask::new(snapped),
        })
    }

    pub fn snapped(&self) -> &SnappedScenario {
        &self.snapped
    }

    pub fn mask(&self) -> &QMask {
        &self.mask
    }

    /// Unmasked `C c(θ, r) + S s(θ, r)`. On the boundary at a node this is
    /// the unit vector of that node.
    pub fn weights_unmasked(&self, theta: f64, r: f64) -> Vec<f64> {
        let n = self.matrices.n();
        if r == 1.0 {
            let k = theta.rem_euclid(TAU) * n as f64 / TAU;
            let j = k.round();
            if (k - j).abs() <= 1e-10 {
                let mut e = vec![0.0; n];
                e[j as usize % n] = 1.0;
                return e;
            }
        }
        let m = ModeVectors::new(n, theta, r);
        let w = self.matrices.c() * m.c + self.matrices.s() * m.s;
        w.as_slice().to_vec()
    }

    /// `Q(C c(θ, r) + S s(θ, r))`.
    pub fn weights(&self, theta: f64, r: f64) -> Vec<f64> {
        let mut w = self.weights_unmasked(theta, r);
        self.mask.apply(&mut w);
        w
    }

    /// `‖Q(C c + S s)‖_1` at `(θ, r)`.
    pub fn bound(&self, theta: f64, r: f64) -> f64 {
        self.weights(theta, r).iter().map(|x| x.abs()).sum()
    }

    /// `vᵀ Q(C c + S s)`.
    pub fn apply(&self, v: &[f64], theta: f64, r: f64) -> Result<f64> {
        if v.len() != self.matrices.n() {
            return Err(Error::InvalidInput(format!(
                "expected {} node values, got {}",
                self.matrices.n(),
                v.len()
            )));
        }
        Ok(self.weights(theta, r).iter().zip(v).map(|(w, x)| w * x).sum())
    }
}

/// `R_Γ2 Δ1⁻¹ I_N(0, v)` at a point of `B1` given node values `v` on `G_{1,n1}`.
pub fn dtd_interpolation_apply(
    snapped: &SnappedScenario,
    v_samples: &[f64],
    point: (f64, f64),
) -> Result<f64> {
    InterpolationOperator::new(snapped)?.apply(v_samples, point.0, point.1)
}

/// Same map by the series path: mask, interpolate, extend harmonically.
pub fn dtd_interpolation_series(
    snapped: &SnappedScenario,
    v_samples: &[f64],
    point: (f64, f64),
) -> Result<f64> {
    let mut w = v_samples.to_vec();
    QMask::new(snapped).apply(&mut w);
    Ok(interpolate(&w)?.eval_harmonic(point.0, point.1))
}

/// Profile of `‖Q(C c + S s)‖_1` along the closed arc `Γ̄2`.
///
/// With `grid_only` the samples are the nodes of `G_{2,n2}` on `Γ̄2`;
/// otherwise `samples` uniform angles including both endpoints.
pub fn interp_bound_profile(
    snapped: &SnappedScenario,
    samples: usize,
    grid_only: bool,
) -> Result<DtDProfile> {
    let op = InterpolationOperator::new(snapped)?;
    let pair = snapped.pair();
    let n2 = snapped.grid().n2();
    let node_angle = |l: usize| TAU * l as f64 / n2 as f64;
    let thetas: Vec<f64> = if grid_only {
        snapped.gamma2_nodes().map(node_angle).collect()
    } else {
        check_samples(samples)?;
        let lo = pair.theta2_star();
        let step = (TAU - 2.0 * lo) / (samples - 1) as f64;
        let mut t: Vec<f64> = (0..samples).map(|k| lo + k as f64 * step).collect();
        t[samples - 1] = TAU - lo;
        t
    };
    let marks: Vec<bool> = thetas
        .iter()
        .map(|&tt| {
            let k = tt * n2 as f64 / TAU;
            (k - k.round()).abs() <= 1e-9
        })
        .collect();
    let pts = thetas
        .par_iter()
        .map(|&tt| {
            let (t, r) = gamma2_to_b1_polar(pair, tt)?;
            Ok((op.bound(t, r), r))
        })
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let endpoints = (values[0], values[values.len() - 1]);
    Ok(DtDProfile {
        scenario: *pair,
        variant: DtDVariant::InterpolationBound,
        order: Some(snapped.grid().n1() / 2 - 1),
        thetas,
        radii: pts.iter().map(|p| p.1).collect(),
        values,
        grid_marks: Some(marks),
        endpoints,
    })
}

/// `C(N, θ1*, θ2*)`: maximum of the masked ℓ1 bound over `Γ̄2 ∩ G_{2,n2}`.
pub fn interp_contraction_bound(snapped: &SnappedScenario) -> Result<f64> {
    Ok(interp_bound_profile(snapped, 0, true)?.max())
}

/// The mirrored bound for disc 2: maximum over `Γ̄1 ∩ G_{1,n1}` of the ℓ1
/// norm of the `G_{2,n2}` interpolation weights masked to `int(Γ2)`.
pub fn interp_contraction_bound_disc2(snapped: &SnappedScenario) -> Result<f64> {
    let n2 = snapped.grid().n2();
    let m = InterpMatrices::new(n2)?;
    let pair = snapped.pair();
    let n1 = snapped.grid().n1();
    let mut best: f64 = 0.0;
    for l in snapped.gamma1_nodes() {
        let t = TAU * l.rem_euclid(n1 as i64) as f64 / n1 as f64;
        let (x, y) = (t.cos(), t.sin());
        let dx = x - pair.m();
        let tt = y.atan2(dx);
        let rho = if l.unsigned_abs() as usize == snapped.ell1() {
            1.0
        } else {
            (dx.hypot(y) / pair.radius()).min(1.0)
        };
        let w: Vec<f64> = if rho == 1.0 {
            vec![0.0; n2]
        } else {
            let modes = ModeVectors::new(n2, tt, rho);
            let mut w = (m.c() * modes.c + m.s() * modes.s).as_slice().to_vec();
            for (j, x) in w.iter_mut().enumerate() {
                if !snapped.is_gamma2_interior(j) {
                    *x = 0.0;
                }
            }
            w
        };
        best = best.max(w.iter().map(|x| x.abs()).sum());
    }
    Ok(best)
}

/// `‖L1‖_∞`, attained by `v ≡ 1`: maximum of the exact profile.
pub fn dtd_exact_norm(pair: &DiscPair) -> Result<f64> {
    Ok(dtd_exact_profile(pair, arc_fn(|_| 1.0), 64)?.max())
}

/// Sign vector of `Q(C c + S s)` at a point: the datum attaining the ℓ1 bound.
pub fn extremal_sign_vector(op: &InterpolationOperator, theta: f64, r: f64) -> Vec<f64> {
    op.weights(theta, r)
        .iter()
        .map(|&w| if w > 0.0 { 1.0 } else if w < 0.0 { -1.0 } else { 0.0 })
        .collect()
}

/// Reference plateau `(θ2_int - θ1_int)/π` of a snapped scenario.
pub fn snapped_plateau(snapped: &SnappedScenario) -> f64 {
    (snapped.theta2_int() - snapped.theta1_int()) / PI
}
