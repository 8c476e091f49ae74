//! Additive and multiplicative Schwarz iterations on `Ω = B1 ∪ B2` with
//! exact (Poisson integral), Fourier-projection and Fourier-interpolation
//! subdomain solvers.
//!
//! The state holds each disc's current solution together with its trace on
//! the other disc's interface arc, sampled at fixed trace nodes. The update
//! norm of a sweep is the sup over both interfaces of the change of these
//! traces.

use std::f64::consts::TAU;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::fourier::{arc_fn, interpolate, poisson_eval, project, ArcFn, BoundaryFn, FourierCoeffs};
use crate::geometry::{DiscPair, SnappedScenario};
use crate::spline::CubicSpline;

/// A real function of the Cartesian point.
pub type PlaneFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    Exact,
    Projection { order: usize },
    Interpolation(SnappedScenario),
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Projection { .. } => "projection",
            Self::Interpolation(_) => "interpolation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Additive,
    Multiplicative,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Additive => "additive",
            Self::Multiplicative => "multiplicative",
        }
    }
}

/// Default number of trace nodes per interface arc.
pub const DEFAULT_TRACE_SAMPLES: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzConfig {
    pair: DiscPair,
    variant: Variant,
    mode: Mode,
    max_sweeps: usize,
    tol: f64,
    trace_samples: usize,
}

impl SchwarzConfig {
    /// For the interpolation variant the geometry is taken from the snapped
    /// scenario and `pair` is ignored.
    pub fn new(
        pair: DiscPair,
        variant: Variant,
        mode: Mode,
        max_sweeps: usize,
        tol: f64,
        trace_samples: usize,
    ) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidInput(format!("tol = {tol} must be positive")));
        }
        if max_sweeps < 1 {
            return Err(Error::InvalidInput("max_sweeps must be at least 1".into()));
        }
        if trace_samples < 3 {
            return Err(Error::InvalidInput("need at least 3 trace samples".into()));
        }
        if pair.is_degenerate() {
            return Err(domain("coincident discs leave no interface to iterate on"));
        }
        if let Variant::Projection { order } = variant {
            if order < 1 {
                return Err(Error::InvalidInput("projection order must be at least 1".into()));
            }
        }
        let pair = match variant {
            Variant::Interpolation(s) => *s.pair(),
            _ => pair,
        };
        Ok(Self {
            pair,
            variant,
            mode,
            max_sweeps,
            tol,
            trace_samples,
        })
    }

    pub fn pair(&self) -> &DiscPair {
        &self.pair
    }

    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn max_sweeps(&self) -> usize {
        self.max_sweeps
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn trace_samples(&self) -> usize {
        self.trace_samples
    }
}

/// Dirichlet data on `∂Ω`, given as a function of the Cartesian point and
/// read off on `∂B_i ∖ Γ_i`.
#[derive(Clone)]
pub struct BoundaryData {
    f: PlaneFn,
}

impl BoundaryData {
    pub fn new(f: PlaneFn) -> Self {
        Self { f }
    }

    pub fn zero() -> Self {
        Self::new(Arc::new(|_, _| 0.0))
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.f)(x, y)
    }
}

/// Solution of one disc.
#[derive(Clone, Debug)]
pub enum DiscSolution {
    /// Poisson extension of assembled boundary data.
    Poisson(BoundaryFn),
    /// Harmonic extension of a finite Fourier series.
    Series(FourierCoeffs),
    /// Harmonic extension of the interpolant of nodal data.
    Nodal { nodes: Vec<f64>, coeffs: FourierCoeffs },
}

impl DiscSolution {
    /// Value at the own-frame polar point `(θ, r)`, `r ≤ 1`.
    pub fn eval_polar(&self, theta: f64, r: f64) -> Result<f64> {
        match self {
            Self::Poisson(g) => {
                if r >= 1.0 {
                    Ok(g.eval(theta))
                } else {
                    poisson_eval(g, theta, r)
                }
            }
            Self::Series(c) | Self::Nodal { coeffs: c, .. } => Ok(c.eval_harmonic(theta, r.min(1.0))),
        }
    }

    /// Nodal data of the interpolation variant.
    pub fn nodal_values(&self) -> Option<&[f64]> {
        match self {
            Self::Nodal { nodes, .. } => Some(nodes),
            _ => None,
        }
    }

    pub fn coefficients(&self) -> Option<&FourierCoeffs> {
        match self {
            Self::Series(c) | Self::Nodal { coeffs: c, .. } => Some(c),
            Self::Poisson(_) => None,
        }
    }
}

/// Current iterate: both disc solutions and their traces on the other
/// disc's interface (`trace1`: `u2` on `Γ1`, `trace2`: `u1` on `Γ2`).
#[derive(Clone, Debug)]
pub struct SchwarzState {
    pub u1: DiscSolution,
    pub u2: DiscSolution,
    pub trace1: Vec<f64>,
    pub trace2: Vec<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Disc {
    One,
    Two,
}

/// Fixed geometric data of a run.
struct Layout {
    pair: DiscPair,
    /// Own-frame angles of the trace nodes on Γ1 (B1 frame) and Γ2 (B2 frame).
    nodes1: Vec<f64>,
    nodes2: Vec<f64>,
}

impl Layout {
    fn new(config: &SchwarzConfig) -> Self {
        let pair = config.pair;
        let (t1, t2) = (pair.theta1_star(), pair.theta2_star());
        let (nodes1, nodes2) = match &config.variant {
            Variant::Interpolation(s) => {
                let (n1, n2) = (s.grid().n1(), s.grid().n2());
                let a: Vec<f64> = (0..n1)
                    .filter(|&j| s.is_gamma1_interior(j))
                    .map(|j| {
                        let x = TAU * j as f64 / n1 as f64;
                        if x > std::f64::consts::PI { x - TAU } else { x }
                    })
                    .collect();
                let mut a = a;
                a.sort_by(f64::total_cmp);
                let b = (0..n2)
                    .filter(|&j| s.is_gamma2_interior(j))
                    .map(|j| TAU * j as f64 / n2 as f64)
                    .collect();
                (a, b)
            }
            _ => {
                let m = config.trace_samples;
                let h1 = 2.0 * t1 / (m + 1) as f64;
                let h2 = (TAU - 2.0 * t2) / (m + 1) as f64;
                (
                    (1..=m).map(|k| -t1 + k as f64 * h1).collect(),
                    (1..=m).map(|k| t2 + k as f64 * h2).collect(),
                )
            }
        };
        Self {
            pair,
            nodes1,
            nodes2,
        }
    }

    fn boundary_point(&self, disc: Disc, theta: f64) -> (f64, f64) {
        match disc {
            Disc::One => (theta.cos(), theta.sin()),
            Disc::Two => {
                let p = &self.pair;
                (p.m() + p.radius() * theta.cos(), p.radius() * theta.sin())
            }
        }
    }

    fn polar(&self, disc: Disc, x: f64, y: f64) -> (f64, f64) {
        match disc {
            Disc::One => (y.atan2(x), x.hypot(y)),
            Disc::Two => {
                let dx = x - self.pair.m();
                (y.atan2(dx), dx.hypot(y) / self.pair.radius())
            }
        }
    }

    /// Interface arc of a disc as `(lo, hi)` in its own frame.
    fn interface(&self, disc: Disc) -> (f64, f64) {
        match disc {
            Disc::One => (-self.pair.theta1_star(), self.pair.theta1_star()),
            Disc::Two => (self.pair.theta2_star(), TAU - self.pair.theta2_star()),
        }
    }

    fn nodes(&self, disc: Disc) -> &[f64] {
        match disc {
            Disc::One => &self.nodes1,
            Disc::Two => &self.nodes2,
        }
    }
}

/// One Schwarz run: configuration, data and derived layout.
pub struct SchwarzSolver {
    config: SchwarzConfig,
    data: BoundaryData,
    layout: Layout,
}

fn other(d: Disc) -> Disc {
    match d {
        Disc::One => Disc::Two,
        Disc::Two => Disc::One,
    }
}

impl SchwarzSolver {
    pub fn new(config: SchwarzConfig, data: BoundaryData) -> Self {
        let layout = Layout::new(&config);
        Self {
            config,
            data,
            layout,
        }
    }

    pub fn config(&self) -> &SchwarzConfig {
        &self.config
    }

    /// Trace nodes on `Γ1` and `Γ2` as Cartesian points.
    pub fn trace_points(&self) -> (Vec<(f64, f64)>, Vec<(f64, f64)>) {
        let l = &self.layout;
        (
            l.nodes1.iter().map(|&t| l.boundary_point(Disc::One, t)).collect(),
            l.nodes2.iter().map(|&t| l.boundary_point(Disc::Two, t)).collect(),
        )
    }

    fn outer_data(&self, disc: Disc) -> ArcFn {
        let data = self.data.clone();
        let pair = self.layout.pair;
        match disc {
            Disc::One => arc_fn(move |t| data.eval(t.cos(), t.sin())),
            Disc::Two => arc_fn(move |t| {
                data.eval(pair.m() + pair.radius() * t.cos(), pair.radius() * t.sin())
            }),
        }
    }

    fn assemble(&self, disc: Disc, inner_iface: ArcFn, knots: Vec<f64>) -> Result<BoundaryFn> {
        let outer = self.outer_data(disc);
        match disc {
            Disc::One => BoundaryFn::two_arcs_with_knots(
                self.layout.pair.theta1_star(),
                inner_iface,
                knots,
                outer,
                Vec::new(),
            ),
            Disc::Two => BoundaryFn::two_arcs_with_knots(
                self.layout.pair.theta2_star(),
                outer,
                Vec::new(),
                inner_iface,
                knots,
            ),
        }
    }

    /// Solves on `disc` with interface data taken from `neighbour` (the other
    /// disc's solution) and its trace at this disc's trace nodes.
    fn solve(&self, disc: Disc, neighbour: Option<&DiscSolution>, trace: &[f64]) -> Result<DiscSolution> {
        let l = &self.layout;
        match &self.config.variant {
            Variant::Exact => {
                let (lo, hi) = l.interface(disc);
                let (plo, phi) = (l.boundary_point(disc, lo), l.boundary_point(disc, hi));
                let mut xs = Vec::with_capacity(trace.len() + 2);
                let mut ys = Vec::with_capacity(trace.len() + 2);
                xs.push(lo);
                ys.push(self.data.eval(plo.0, plo.1));
                xs.extend_from_slice(l.nodes(disc));
                ys.extend_from_slice(trace);
                xs.push(hi);
                ys.push(self.data.eval(phi.0, phi.1));
                let spline = Arc::new(CubicSpline::natural(xs, ys)?);
                let knots = l.nodes(disc).to_vec();
                let f = arc_fn(move |t| spline.eval(t));
                Ok(DiscSolution::Poisson(self.assemble(disc, f, knots)?))
            }
            Variant::Projection { order } => {
                let iface: ArcFn = match neighbour {
                    None => arc_fn(|_| 0.0),
                    Some(DiscSolution::Series(c)) => {
                        let c = Arc::new(c.clone());
                        let pair = l.pair;
                        let nb = other(disc);
                        arc_fn(move |t| {
                            let (x, y) = match disc {
                                Disc::One => (t.cos(), t.sin()),
                                Disc::Two => (pair.m() + pair.radius() * t.cos(), pair.radius() * t.sin()),
                            };
                            let (tt, r) = match nb {
                                Disc::One => (y.atan2(x), x.hypot(y)),
                                Disc::Two => {
                                    let dx = x - pair.m();
                                    (y.atan2(dx), dx.hypot(y) / pair.radius())
                                }
                            };
                            c.eval_harmonic(tt, r.min(1.0))
                        })
                    }
                    Some(_) => return Err(Error::InvalidInput("projection state holds series solutions".into())),
                };
                let g = self.assemble(disc, iface, Vec::new())?;
                Ok(DiscSolution::Series(project(&g, *order)?))
            }
            Variant::Interpolation(s) => {
                let n = match disc {
                    Disc::One => s.grid().n1(),
                    Disc::Two => s.grid().n2(),
                };
                let iface_nodes = l.nodes(disc);
                let mut nodes = Vec::with_capacity(n);
                for j in 0..n {
                    let x = TAU * j as f64 / n as f64;
                    let interior = match disc {
                        Disc::One => s.is_gamma1_interior(j),
                        Disc::Two => s.is_gamma2_interior(j),
                    };
                    if interior {
                        let xs = if disc == Disc::One && x > std::f64::consts::PI { x - TAU } else { x };
                        let k = iface_nodes
                            .iter()
                            .position(|&t| t == xs)
                            .expect("interior node is a trace node");
                        nodes.push(trace[k]);
                    } else {
                        let (px, py) = l.boundary_point(disc, x);
                        nodes.push(self.data.eval(px, py));
                    }
                }
                let coeffs = interpolate(&nodes)?;
                Ok(DiscSolution::Nodal { nodes, coeffs })
            }
        }
    }

    /// Values of `sol` (living on `owner`) at the trace nodes of the other disc.
    fn trace_of(&self, owner: Disc, sol: &DiscSolution) -> Result<Vec<f64>> {
        let l = &self.layout;
        let target = other(owner);
        l.nodes(target)
            .par_iter()
            .map(|&t| {
                let (x, y) = l.boundary_point(target, t);
                let (tt, r) = l.polar(owner, x, y);
                sol.eval_polar(tt, r.min(1.0))
            })
            .collect()
    }

    /// Initial iterate: each disc solved with zero interface data.
    pub fn initial_state(&self) -> Result<SchwarzState> {
        let zero1 = vec![0.0; self.layout.nodes1.len()];
        let zero2 = vec![0.0; self.layout.nodes2.len()];
        let u1 = self.solve(Disc::One, None, &zero1)?;
        let u2 = self.solve(Disc::Two, None, &zero2)?;
        let trace2 = self.trace_of(Disc::One, &u1)?;
        let trace1 = self.trace_of(Disc::Two, &u2)?;
        Ok(SchwarzState {
            u1,
            u2,
            trace1,
            trace2,
        })
    }

    /// One additive or multiplicative sweep.
    pub fn sweep(&self, state: &SchwarzState) -> Result<SchwarzState> {
        match self.config.mode {
            Mode::Additive => {
                let (r1, r2) = rayon::join(
                    || self.solve(Disc::One, Some(&state.u2), &state.trace1),
                    || self.solve(Disc::Two, Some(&state.u1), &state.trace2),
                );
                let (u1, u2) = (r1?, r2?);
                let trace2 = self.trace_of(Disc::One, &u1)?;
                let trace1 = self.trace_of(Disc::Two, &u2)?;
                Ok(SchwarzState {
                    u1,
                    u2,
                    trace1,
                    trace2,
                })
            }
            Mode::Multiplicative => {
                let u1 = self.solve(Disc::One, Some(&state.u2), &state.trace1)?;
                let trace2 = self.trace_of(Disc::One, &u1)?;
                let u2 = self.solve(Disc::Two, Some(&u1), &trace2)?;
                let trace1 = self.trace_of(Disc::Two, &u2)?;
                Ok(SchwarzState {
                    u1,
                    u2,
                    trace1,
                    trace2,
                })
            }
        }
    }

    /// `u1` at a Cartesian point of `B̄1`.
    pub fn eval_disc1(&self, state: &SchwarzState, x: f64, y: f64) -> Result<f64> {
        let (t, r) = self.layout.polar(Disc::One, x, y);
        state.u1.eval_polar(t, r)
    }

    /// `u2` at a Cartesian point of `B̄2`.
    pub fn eval_disc2(&self, state: &SchwarzState, x: f64, y: f64) -> Result<f64> {
        let (t, r) = self.layout.polar(Disc::Two, x, y);
        state.u2.eval_polar(t, r)
    }

    /// Sup distance of the traces to a reference solution at the trace nodes.
    pub fn trace_error(&self, state: &SchwarzState, reference: &dyn Fn(f64, f64) -> f64) -> f64 {
        let (p1, p2) = self.trace_points();
        let e1 = p1
            .iter()
            .zip(&state.trace1)
            .map(|(&(x, y), v)| (v - reference(x, y)).abs());
        let e2 = p2
            .iter()
            .zip(&state.trace2)
            .map(|(&(x, y), v)| (v - reference(x, y)).abs());
        e1.chain(e2).fold(0.0, f64::max)
    }

    /// Largest nodal error at the intersection nodes (interpolation variant).
    pub fn intersection_node_error(
        &self,
        state: &SchwarzState,
        reference: &dyn Fn(f64, f64) -> f64,
    ) -> Option<f64> {
        let Variant::Interpolation(s) = &self.config.variant else {
            return None;
        };
        let (n1, n2) = (s.grid().n1(), s.grid().n2());
        let w1 = state.u1.nodal_values()?;
        let w2 = state.u2.nodal_values()?;
        let mut e: f64 = 0.0;
        for j in [s.ell1(), n1 - s.ell1()] {
            let (x, y) = self.layout.boundary_point(Disc::One, TAU * j as f64 / n1 as f64);
            e = e.max((w1[j] - reference(x, y)).abs());
        }
        for j in [s.ell2(), n2 - s.ell2()] {
            let (x, y) = self.layout.boundary_point(Disc::Two, TAU * j as f64 / n2 as f64);
            e = e.max((w2[j] - reference(x, y)).abs());
        }
        Some(e)
    }

    /// Iterates from `state` until the update norm drops to `tol` or the
    /// sweep budget is spent.
    pub fn run_from(
        &self,
        mut state: SchwarzState,
        reference: Option<&dyn Fn(f64, f64) -> f64>,
    ) -> Result<IterationTrace> {
        let mut updates = Vec::new();
        let mut true_errors = reference.map(|_| Vec::new());
        let mut node_errors = match (&self.config.variant, reference) {
            (Variant::Interpolation(_), Some(_)) => Some(Vec::new()),
            _ => None,
        };
        let mut converged = false;
        for _ in 0..self.config.max_sweeps {
            let next = self.sweep(&state)?;
            let d1 = sup_diff(&next.trace1, &state.trace1);
            let d2 = sup_diff(&next.trace2, &state.trace2);
            let upd = d1.max(d2);
            updates.push(upd);
            if let Some(f) = reference {
                if let Some(v) = true_errors.as_mut() {
                    v.push(self.trace_error(&next, f));
                }
                if let (Some(v), Some(e)) = (node_errors.as_mut(), self.intersection_node_error(&next, f)) {
                    v.push(e);
                }
            }
            state = next;
            if upd <= self.config.tol {
                converged = true;
                break;
            }
        }
        let ratios = updates
            .windows(2)
            .map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 })
            .collect();
        Ok(IterationTrace {
            sweeps: updates.len(),
            updates,
            ratios,
            true_errors,
            intersection_errors: node_errors,
            converged,
            state,
        })
    }

    pub fn run(&self, reference: Option<&dyn Fn(f64, f64) -> f64>) -> Result<IterationTrace> {
        self.run_from(self.initial_state()?, reference)
    }
}

fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Record of a Schwarz run.
#[derive(Clone, Debug)]
pub struct IterationTrace {
    /// Sup-norm interface update per sweep.
    pub updates: Vec<f64>,
    /// `updates[n+1] / updates[n]`.
    pub ratios: Vec<f64>,
    /// Sup distance of the interface traces to a reference solution, per sweep.
    pub true_errors: Option<Vec<f64>>,
    /// Interpolation variant: nodal error at the intersection nodes, per sweep.
    pub intersection_errors: Option<Vec<f64>>,
    pub converged: bool,
    pub sweeps: usize,
    pub state: SchwarzState,
}

/// Single sweep, building the solver on the fly.
pub fn sweep(config: &SchwarzConfig, data: &BoundaryData, state: &SchwarzState) -> Result<SchwarzState> {
    SchwarzSolver::new(*config, data.clone()).sweep(state)
}

/// Runs from the default initial iterate (zero interface data).
pub fn run(config: &SchwarzConfig, data: &BoundaryData) -> Result<IterationTrace> {
    SchwarzSolver::new(*config, data.clone()).run(None)
}

/// Geometric-mean ratio of successive update norms over the last half of
/// the leading run of norms above `100·ε`.
pub fn observed_rate(errors: &[f64]) -> Result<f64> {
    let floor = 100.0 * f64::EPSILON;
    let usable = errors.iter().take_while(|&&e| e > floor).count();
    if usable < 4 {
        return Err(Error::InsufficientData(format!(
            "{usable} error values above {floor:.1e}; need at least 4"
        )));
    }
    let tail = &errors[usable / 2..usable];
    let steps = (tail.len() - 1) as f64;
    Ok((tail[tail.len() - 1] / tail[0]).powf(1.0 / steps))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ManufacturedKind {
    /// `Re (x + iy)^k`, `k ≤ 6`.
    HarmonicPolynomial(u32),
    /// `ln |x - x0|`.
    LogSource(f64, f64),
}

/// Default log-source location, outside every example geometry.
pub const DEFAULT_LOG_SOURCE: (f64, f64) = (-1.5, 1.0);

/// A harmonic function on a neighbourhood of `Ω̄` with its boundary trace.
#[derive(Clone)]
pub struct ManufacturedSolution {
    kind: ManufacturedKind,
    f: PlaneFn,
}

impl ManufacturedSolution {
    pub fn kind(&self) -> ManufacturedKind {
        self.kind
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.f)(x, y)
    }

    pub fn function(&self) -> PlaneFn {
        self.f.clone()
    }

    pub fn boundary_data(&self) -> BoundaryData {
        BoundaryData::new(self.f.clone())
    }

    /// 5-point Laplacian with one Richardson step; step `h` scaled down near
    /// a log source.
    pub fn laplacian(&self, x: f64, y: f64) -> f64 {
        let h = match self.kind {
            ManufacturedKind::LogSource(x0, y0) => 0.005 * (x - x0).hypot(y - y0).min(1.0),
            ManufacturedKind::HarmonicPolynomial(_) => 0.005,
        };
        let lap = |h: f64| {
            (self.eval(x + h, y) + self.eval(x - h, y) + self.eval(x, y + h) + self.eval(x, y - h)
                - 4.0 * self.eval(x, y))
                / (h * h)
        };
        (4.0 * lap(0.5 * h) - lap(h)) / 3.0
    }
}

/// Builds a manufactured solution; a log source must keep distance `≥ 0.1`
/// from `Ω̄ = B̄1 ∪ B̄2`.
pub fn manufactured(kind: ManufacturedKind, pair: &DiscPair) -> Result<ManufacturedSolution> {
    let f: PlaneFn = match kind {
        ManufacturedKind::HarmonicPolynomial(k) => {
            if k > 6 {
                return Err(domain(format!("harmonic polynomial degree {k} above 6")));
            }
            Arc::new(move |x, y| {
                // Re (x + iy)^k by repeated complex multiplication.
                let (mut re, mut im) = (1.0, 0.0);
                for _ in 0..k {
                    (re, im) = (re * x - im * y, re * y + im * x);
                }
                re
            })
        }
        ManufacturedKind::LogSource(x0, y0) => {
            let d = pair.distance_outside(x0, y0);
            if !(d >= 0.1) {
                return Err(domain(format!(
                    "log source ({x0}, {y0}) lies within {d:.3} of the closed domain (need >= 0.1)"
                )));
            }
            Arc::new(move |x, y| (x - x0).hypot(y - y0).ln())
        }
    };
    Ok(ManufacturedSolution { kind, f })
}

/// Deterministic points of the open overlap `B1 ∩ B2`, at least `margin`
/// inside both discs.
pub fn overlap_points(pair: &DiscPair, count: usize, margin: f64) -> Vec<(f64, f64)> {
    let (m, r) = (pair.m(), pair.radius());
    let x_lo = (m - r).max(-1.0);
    let side = 60;
    let mut pts = Vec::new();
    for i in 0..=side {
        for j in 0..=side {
            let x = x_lo + (1.0 - x_lo) * i as f64 / side as f64;
            let y = -1.0 + 2.0 * j as f64 / side as f64;
            if x.hypot(y) <= 1.0 - margin && (x - m).hypot(y) <= r - margin {
                pts.push((x, y));
            }
        }
    }
    if pts.len() <= count {
        return pts;
    }
    let stride = pts.len() as f64 / count as f64;
    (0..count).map(|k| pts[(k as f64 * stride) as usize]).collect()
}

/// Deterministic points of `Ω = B1 ∪ B2`, at least `margin` from `∂Ω`.
pub fn domain_points(pair: &DiscPair, count: usize, margin: f64) -> Vec<(f64, f64)> {
    let (m, r) = (pair.m(), pair.radius());
    let (x_lo, x_hi) = ((m - r).min(-1.0), (m + r).max(1.0));
    let y_hi = r.max(1.0);
    let side = 40;
    let mut pts = Vec::new();
    for i in 0..=side {
        for j in 0..=side {
            let x = x_lo + (x_hi - x_lo) * i as f64 / side as f64;
            let y = -y_hi + 2.0 * y_hi * j as f64 / side as f64;
            if x.hypot(y) <= 1.0 - margin || (x - m).hypot(y) <= r - margin {
                pts.push((x, y));
            }
        }
    }
    if pts.len() <= count {
        return pts;
    }
    let stride = pts.len() as f64 / count as f64;
    (0..count).map(|k| pts[(k as f64 * stride) as usize]).collect()
}
