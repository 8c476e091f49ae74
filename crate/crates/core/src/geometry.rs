//! Two-overlapping-disc scenarios.
//!
//! `B1` is always the unit disc centred at the origin. `B2` has centre `(m, 0)`
//! and radius `R`. The upper intersection point sits at polar angle
//! `theta1_star` seen from the origin and at `theta2_star` seen from `(m, 0)`.
//! The interface arc `Γ1 = ∂B1 ∩ B2` is `θ ∈ [-θ1*, θ1*]` and
//! `Γ2 = ∂B2 ∩ B1` is `θ̃ ∈ [θ2*, 2π - θ2*]` in the B2 frame.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{domain, Error, Result};

/// Slack applied to the admissibility inequalities.
pub const ANGLE_SLACK: f64 = 1e-12;

/// Geometry of the two discs, parameterized both by the intersection angles
/// and by the centre offset / radius of `B2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPair {
    theta1_star: f64,
    theta2_star: f64,
    m: f64,
    r: f64,
}

impl DiscPair {
    pub fn theta1_star(&self) -> f64 {
        self.theta1_star
    }

    pub fn theta2_star(&self) -> f64 {
        self.theta2_star
    }

    /// Centre offset of `B2` along the x-axis.
    pub fn m(&self) -> f64 {
        self.m
    }

    /// Radius of `B2`.
    pub fn radius(&self) -> f64 {
        self.r
    }

    /// Coincident discs (`θ1* = θ2*`): no proper overlap, zero contraction.
    pub fn is_degenerate(&self) -> bool {
        (self.theta2_star - self.theta1_star).abs() <= ANGLE_SLACK
    }

    /// Upper intersection point computed in the `B1` frame.
    pub fn intersection_point(&self) -> (f64, f64) {
        (self.theta1_star.cos(), self.theta1_star.sin())
    }

    /// Upper intersection point computed in the `B2` frame.
    pub fn intersection_point_b2(&self) -> (f64, f64) {
        (
            self.m + self.r * self.theta2_star.cos(),
            self.r * self.theta2_star.sin(),
        )
    }

    /// Exact maximum-norm contraction bound `(θ2* - θ1*)/π` of this scenario.
    pub fn contraction(&self) -> f64 {
        (self.theta2_star - self.theta1_star) / PI
    }

    /// Whether the Cartesian point lies in the closed union of both discs.
    pub fn contains_closed(&self, x: f64, y: f64) -> bool {
        x.hypot(y) <= 1.0 || (x - self.m).hypot(y) <= self.r
    }

    /// Distance from a point outside the union to the closed union.
    pub fn distance_outside(&self, x: f64, y: f64) -> f64 {
        let d1 = x.hypot(y) - 1.0;
        let d2 = (x - self.m).hypot(y) - self.r;
        d1.min(d2)
    }
}

fn check_angles(theta1: f64, theta2: f64) -> Result<()> {
    if !(theta1.is_finite() && theta2.is_finite()) {
        return Err(domain("angles must be finite"));
    }
    if theta1 <= 0.0 {
        return Err(domain(format!("theta1* = {theta1} must be positive")));
    }
    if theta2 >= PI {
        return Err(domain(format!("theta2* = {theta2} must be below pi")));
    }
    if theta1 > theta2 + ANGLE_SLACK {
        return Err(domain(format!(
            "theta1* = {theta1} exceeds theta2* = {theta2}"
        )));
    }
    Ok(())
}

/// Builds the disc pair from the intersection angles.
pub fn discs_from_angles(theta1: f64, theta2: f64) -> Result<DiscPair> {
    check_angles(theta1, theta2)?;
    let theta2 = theta2.max(theta1);
    let r = theta1.sin() / theta2.sin();
    let m = if theta2 == theta1 {
        // Coincident circles; the general formula leaves a rounding residue.
        0.0
    } else if theta2 == FRAC_PI_2 {
        theta1.cos()
    } else {
        theta1.cos() - theta1.sin() / theta2.tan()
    };
    Ok(DiscPair {
        theta1_star: theta1,
        theta2_star: theta2,
        m,
        r,
    })
}

/// Recovers the intersection angles of `B2 = B((m, 0); R)` by the cosine rule.
///
/// Requires `-1 < m - R < 1` and `m + R > 1`; the error names which of the
/// two configurations (containment or disjointness) was hit.
pub fn angles_from_discs(m: f64, r: f64) -> Result<(f64, f64)> {
    if !(m.is_finite() && r.is_finite()) || r <= 0.0 {
        return Err(domain("radius must be positive and finite"));
    }
    if m - r >= 1.0 {
        return Err(domain(format!(
            "discs disjoint: m - R = {} >= 1",
            m - r
        )));
    }
    if m - r <= -1.0 {
        return Err(domain(format!(
            "disc B1 contained in B2: m - R = {} <= -1",
            m - r
        )));
    }
    if m + r <= 1.0 {
        return Err(domain(format!(
            "disc B2 contained in B1: m + R = {} <= 1",
            m + r
        )));
    }
    let cos1 = ((1.0 + m * m - r * r) / (2.0 * m)).clamp(-1.0, 1.0);
    let cos2 = ((r * r + m * m - 1.0) / (2.0 * r * m)).clamp(-1.0, 1.0);
    Ok((cos1.acos(), PI - cos2.acos()))
}

/// Builds the pair from `(m, R)`, keeping the given values rather than the
/// round-tripped ones.
pub fn discs_from_center_radius(m: f64, r: f64) -> Result<DiscPair> {
    let (theta1, theta2) = angles_from_discs(m, r)?;
    Ok(DiscPair {
        theta1_star: theta1,
        theta2_star: theta2,
        m,
        r,
    })
}

/// Maps the `Γ2` point with `B2` polar angle `theta_tilde` to `B1` polar
/// coordinates `(θ, r)` with `θ ∈ (-π, π]`.
pub fn gamma2_to_b1_polar(pair: &DiscPair, theta_tilde: f64) -> Result<(f64, f64)> {
    let lo = pair.theta2_star;
    let hi = TAU - pair.theta2_star;
    if theta_tilde < lo - ANGLE_SLACK || theta_tilde > hi + ANGLE_SLACK {
        return Err(domain(format!(
            "theta_tilde = {theta_tilde} outside Γ2 = [{lo}, {hi}]"
        )));
    }
    if (theta_tilde - lo).abs() <= ANGLE_SLACK {
        return Ok((pair.theta1_star, 1.0));
    }
    if (theta_tilde - hi).abs() <= ANGLE_SLACK {
        return Ok((-pair.theta1_star, 1.0));
    }
    let x = pair.m + pair.r * theta_tilde.cos();
    let y = pair.r * theta_tilde.sin();
    Ok((y.atan2(x), x.hypot(y).min(1.0)))
}

/// Maps the `Γ1` point at `B1` angle `theta` to `B2` polar coordinates
/// `(θ̃, ρ)` with the radius normalized by `R`.
pub fn gamma1_to_b2_polar(pair: &DiscPair, theta: f64) -> Result<(f64, f64)> {
    let t1 = pair.theta1_star;
    if theta < -t1 - ANGLE_SLACK || theta > t1 + ANGLE_SLACK {
        return Err(domain(format!(
            "theta = {theta} outside Γ1 = [{}, {t1}]",
            -t1
        )));
    }
    if (theta - t1).abs() <= ANGLE_SLACK {
        return Ok((pair.theta2_star, 1.0));
    }
    if (theta + t1).abs() <= ANGLE_SLACK {
        return Ok((-pair.theta2_star, 1.0));
    }
    Ok(b1_point_in_b2_frame(pair, theta.cos(), theta.sin()))
}

/// Polar coordinates of a Cartesian point in the `B2` frame, radius
/// normalized by `R`; no membership check.
pub fn b1_point_in_b2_frame(pair: &DiscPair, x: f64, y: f64) -> (f64, f64) {
    let dx = x - pair.m;
    (y.atan2(dx), dx.hypot(y) / pair.r)
}

/// Even node counts on `∂B1` and `∂B2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridConfig {
    n1: usize,
    n2: usize,
}

impl GridConfig {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        for (name, n) in [("n1", n1), ("n2", n2)] {
            if n < 6 || n % 2 != 0 {
                return Err(Error::InvalidInput(format!(
                    "{name} = {n} must be an even integer >= 6"
                )));
            }
        }
        Ok(Self { n1, n2 })
    }

    /// Grid for truncation order `N` on `B1` (`n1 = 2(N + 1)`) with
    /// `n2` the even integer nearest `factor · R · n1`.
    pub fn for_order(order: usize, radius: f64, factor: f64) -> Result<Self> {
        let n1 = 2 * (order + 1);
        Self::new(n1, nearest_even(factor * radius * n1 as f64).max(6))
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }
}

/// Nearest even integer; halves round down.
pub fn nearest_even(x: f64) -> usize {
    let half = x / 2.0;
    let k = (half - 0.5).ceil().max(0.0);
    2 * k as usize
}

/// Round to nearest, resolving exact half-steps toward the smaller index.
fn round_half_down(x: f64) -> i64 {
    (x - 0.5).ceil() as i64
}

/// A disc pair whose intersection points are nodes of both grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnappedScenario {
    base: DiscPair,
    pair: DiscPair,
    grid: GridConfig,
    ell1: usize,
    ell2: usize,
}

impl SnappedScenario {
    /// Scenario from explicit node indices; checks the index ranges.
    pub fn from_indices(base: DiscPair, grid: GridConfig, ell1: usize, ell2: usize) -> Result<Self> {
        let (n1, n2) = (grid.n1, grid.n2);
        if ell1 < 1 || 2 * ell1 >= n1 {
            return Err(Error::Assumption(format!(
                "ell1 = {ell1} outside [1, {})",
                n1 / 2
            )));
        }
        if 2 * ell2 >= n2 || ell2 * n1 < ell1 * n2 {
            return Err(Error::Assumption(format!(
                "ell2 = {ell2} outside [{}, {})",
                (ell1 * n2).div_ceil(n1),
                n2 / 2
            )));
        }
        let theta1 = ell1 as f64 * TAU / n1 as f64;
        let theta2 = (ell2 as f64 * TAU / n2 as f64).max(theta1);
        let pair = discs_from_angles(theta1, theta2)?;
        Ok(Self {
            base,
            pair,
            grid,
            ell1,
            ell2,
        })
    }

    /// The original, unsnapped scenario.
    pub fn base(&self) -> &DiscPair {
        &self.base
    }

    /// The snapped geometry rebuilt from the grid angles.
    pub fn pair(&self) -> &DiscPair {
        &self.pair
    }

    pub fn grid(&self) -> GridConfig {
        self.grid
    }

    pub fn ell1(&self) -> usize {
        self.ell1
    }

    pub fn ell2(&self) -> usize {
        self.ell2
    }

    pub fn theta1_int(&self) -> f64 {
        self.pair.theta1_star
    }

    pub fn theta2_int(&self) -> f64 {
        self.pair.theta2_star
    }

    /// Node `j` of `G_{1,n1}` lies in the open arc `int(Γ1)`.
    pub fn is_gamma1_interior(&self, j: usize) -> bool {
        let n1 = self.grid.n1;
        let j = j % n1;
        j < self.ell1 || j > n1 - self.ell1
    }

    /// Node `j` of `G_{2,n2}` lies in the open arc `int(Γ2)`.
    pub fn is_gamma2_interior(&self, j: usize) -> bool {
        let j = j % self.grid.n2;
        j > self.ell2 && j < self.grid.n2 - self.ell2
    }

    /// Indices of the `G_{2,n2}` nodes on the closed arc `Γ̄2`, in order.
    pub fn gamma2_nodes(&self) -> std::ops::RangeInclusive<usize> {
        self.ell2..=self.grid.n2 - self.ell2
    }

    /// Indices of the `G_{1,n1}` nodes on the closed arc `Γ̄1`, ordered from
    /// `-θ1*` to `θ1*`, as signed offsets.
    pub fn gamma1_nodes(&self) -> std::ops::RangeInclusive<i64> {
        -(self.ell1 as i64)..=self.ell1 as i64
    }
}

/// Snaps arbitrary intersection angles to the nearest grid-compatible
/// scenario: `θ1` first, then `θ2` subject to `θ2_int ≥ θ1_int`.
pub fn snap_to_grids(theta1: f64, theta2: f64, n1: usize, n2: usize) -> Result<SnappedScenario> {
    let base = discs_from_angles(theta1, theta2)?;
    snap_pair(&base, GridConfig::new(n1, n2)?)
}

/// [`snap_to_grids`] for an existing pair.
pub fn snap_pair(base: &DiscPair, grid: GridConfig) -> Result<SnappedScenario> {
    let (n1, n2) = (grid.n1 as i64, grid.n2 as i64);
    let ell1 = round_half_down(base.theta1_star * n1 as f64 / TAU).clamp(1, n1 / 2 - 1);
    let lower = (ell1 * n2 + n1 - 1) / n1;
    let upper = n2 / 2 - 1;
    if lower > upper {
        return Err(Error::Infeasible(format!(
            "no node on G_(2,{n2}) at or beyond theta1_int = {:.6} (needs index >= {lower}, max {upper})",
            ell1 as f64 * TAU / n1 as f64
        )));
    }
    let ell2 = round_half_down(base.theta2_star * n2 as f64 / TAU).clamp(lower, upper);
    SnappedScenario::from_indices(*base, grid, ell1 as usize, ell2 as usize)
}

/// Exact-solve contraction bound `C_1 = (θ2* - θ1*)/π`.
pub fn contraction_exact(theta1: f64, theta2: f64) -> Result<f64> {
    check_angles(theta1, theta2)?;
    Ok(((theta2 - theta1) / PI).max(0.0))
}

/// `C_1` for two equal discs (`θ2* = π - θ1*`): `1 - 2θ1*/π`.
///
/// Evaluated as `(π - 2θ1*)/π` through [`contraction_exact`] so that both
/// agree bit for bit.
pub fn contraction_symmetric(theta1: f64) -> Result<f64> {
    if !(theta1 > 0.0 && theta1 < FRAC_PI_2) {
        return Err(domain(format!("theta1* = {theta1} outside (0, pi/2)")));
    }
    contraction_exact(theta1, PI - theta1)
}

/// `C_1` for `B2` of radius `R > 1`, where `θ2* = π - arcsin(sin θ1*/R)`.
pub fn contraction_unequal(theta1: f64, radius: f64) -> Result<f64> {
    if !(theta1 > 0.0 && theta1 < PI) {
        return Err(domain(format!("theta1* = {theta1} outside (0, pi)")));
    }
    if !(radius > 1.0) {
        return Err(domain(format!("R = {radius} must exceed 1")));
    }
    Ok(1.0 - ((theta1.sin() / radius).asin() + theta1) / PI)
}

/// `θ2*` of the `B2` with radius `R ≥ 1` meeting `B1` at angle `θ1*`.
pub fn theta2_for_radius(theta1: f64, radius: f64) -> Result<f64> {
    if !(theta1 > 0.0 && theta1 < PI) || !(radius >= 1.0) {
        return Err(domain(format!(
            "theta1* = {theta1}, R = {radius}: need 0 < theta1* < pi and R >= 1"
        )));
    }
    Ok(PI - (theta1.sin() / radius).asin())
}
