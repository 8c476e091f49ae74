use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};

/// A real function of the polar angle, shared between threads.
pub type ArcFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Wraps a closure as an [`ArcFn`].
pub fn arc_fn<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> ArcFn {
    Arc::new(f)
}

#[derive(Clone)]
struct Piece {
    end: f64,
    f: ArcFn,
    knots: Vec<f64>,
}

/// Junction between two consecutive pieces with its one-sided limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Junction {
    /// Angle in `[0, 2π)`.
    pub angle: f64,
    pub minus: f64,
    pub plus: f64,
}

impl Junction {
    pub fn jump(&self) -> f64 {
        self.plus - self.minus
    }
}

/// Piecewise continuous function on the unit circle.
///
/// Pieces partition `[start, start + 2π)` into consecutive closed arcs and
/// are evaluated at the unreduced angle in that window. At a junction the
/// right-hand piece wins, so evaluation returns `g⁺` there. Pieces may list
/// interior knots (points of reduced smoothness) that quadratures split at.
#[derive(Clone)]
pub struct BoundaryFn {
    start: f64,
    pieces: Vec<Piece>,
    junctions: Vec<Junction>,
}

impl fmt::Debug for BoundaryFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryFn")
            .field("start", &self.start)
            .field("ends", &self.pieces.iter().map(|p| p.end).collect::<Vec<_>>())
            .field("junctions", &self.junctions)
            .finish()
    }
}

/// Incremental constructor for [`BoundaryFn`].
pub struct BoundaryBuilder {
    start: f64,
    pieces: Vec<Piece>,
}

impl BoundaryBuilder {
    /// Appends a piece covering `[previous end, end]`.
    pub fn piece(self, end: f64, f: ArcFn) -> Self {
        self.piece_with_knots(end, f, Vec::new())
    }

    pub fn piece_with_knots(mut self, end: f64, f: ArcFn, knots: Vec<f64>) -> Self {
        self.pieces.push(Piece { end, f, knots });
        self
    }

    pub fn build(self) -> Result<BoundaryFn> {
        let Self { start, mut pieces } = self;
        if pieces.is_empty() {
            return Err(Error::InvalidInput("boundary function needs a piece".into()));
        }
        if !start.is_finite() {
            return Err(domain("start angle must be finite"));
        }
        let mut prev = start;
        for p in &pieces {
            if !(p.end > prev) {
                return Err(Error::InvalidInput(format!(
                    "piece ends must increase: {} after {prev}",
                    p.end
                )));
            }
            prev = p.end;
        }
        let full = start + TAU;
        if (prev - full).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "pieces cover [{start}, {prev}], not a full turn"
            )));
        }
        pieces.last_mut().expect("non-empty").end = full;
        for p in pieces.iter_mut() {
            p.knots.sort_by(f64::total_cmp);
        }

        let count = pieces.len();
        let mut junctions = Vec::with_capacity(count);
        for i in 0..count {
            let at = if i == 0 { start } else { pieces[i - 1].end };
            let minus = if i == 0 {
                (pieces[count - 1].f)(full)
            } else {
                (pieces[i - 1].f)(at)
            };
            let plus = (pieces[i].f)(at);
            junctions.push(Junction {
                angle: at.rem_euclid(TAU),
                minus,
                plus,
            });
        }
        junctions.sort_by(|a, b| a.angle.total_cmp(&b.angle));
        Ok(BoundaryFn {
            start,
            pieces,
            junctions,
        })
    }
}

impl BoundaryFn {
    pub fn builder(start: f64) -> BoundaryBuilder {
        BoundaryBuilder {
            start,
            pieces: Vec::new(),
        }
    }

    /// A single smooth piece on `[0, 2π)`.
    pub fn from_fn(f: ArcFn) -> Self {
        Self::builder(0.0)
            .piece(TAU, f)
            .build()
            .expect("one full piece is valid")
    }

    pub fn constant(c: f64) -> Self {
        Self::from_fn(arc_fn(move |_| c))
    }

    /// `inner` on `[-w, w]` and `outer` on `[w, 2π - w]`, `0 < w < π`.
    pub fn two_arcs(half_width: f64, inner: ArcFn, outer: ArcFn) -> Result<Self> {
        Self::two_arcs_with_knots(half_width, inner, Vec::new(), outer, Vec::new())
    }

    pub fn two_arcs_with_knots(
        half_width: f64,
        inner: ArcFn,
        inner_knots: Vec<f64>,
        outer: ArcFn,
        outer_knots: Vec<f64>,
    ) -> Result<Self> {
        if !(half_width > 0.0 && half_width < std::f64::consts::PI) {
            return Err(domain(format!("arc half-width {half_width} outside (0, pi)")));
        }
        Self::builder(-half_width)
            .piece_with_knots(half_width, inner, inner_knots)
            .piece_with_knots(TAU - half_width, outer, outer_knots)
            .build()
    }

    /// Characteristic function of the arc `[-θ*, θ*]`.
    pub fn arc_indicator(theta_star: f64) -> Result<Self> {
        Self::two_arcs(theta_star, arc_fn(|_| 1.0), arc_fn(|_| 0.0))
    }

    /// `v` on `[-θ*, θ*]`, zero elsewhere: the datum `(0, v)`.
    pub fn arc_extension(theta_star: f64, v: ArcFn) -> Result<Self> {
        Self::two_arcs(theta_star, v, arc_fn(|_| 0.0))
    }

    /// Start of the parameter window `[start, start + 2π)`.
    pub fn start(&self) -> f64 {
        self.start
    }

    fn locate(&self, theta: f64) -> (usize, f64) {
        let mut t = self.start + (theta - self.start).rem_euclid(TAU);
        if t >= self.start + TAU {
            t = self.start;
        }
        let i = self
            .pieces
            .partition_point(|p| p.end <= t)
            .min(self.pieces.len() - 1);
        (i, t)
    }

    /// Value at `theta`; returns `g⁺` at a junction.
    pub fn eval(&self, theta: f64) -> f64 {
        let (i, t) = self.locate(theta);
        (self.pieces[i].f)(t)
    }

    /// All piece junctions, sorted by angle in `[0, 2π)`.
    pub fn junctions(&self) -> &[Junction] {
        &self.junctions
    }

    /// Junctions where the function jumps.
    pub fn breakpoints(&self) -> Vec<Junction> {
        self.junctions
            .iter()
            .filter(|j| j.jump().abs() > 1e-12 * (1.0 + j.minus.abs().max(j.plus.abs())))
            .copied()
            .collect()
    }

    /// One-sided limits `(g⁻, g⁺)` at a junction within `1e-12` of `angle`.
    pub fn one_sided_limits(&self, angle: f64) -> Option<(f64, f64)> {
        let a = angle.rem_euclid(TAU);
        self.junctions
            .iter()
            .find(|j| {
                let d = (j.angle - a).abs();
                d.min(TAU - d) <= 1e-12
            })
            .map(|j| (j.minus, j.plus))
    }

    /// Sorted split points in `[lo, hi]`: both ends plus every junction and
    /// knot (shifted by whole turns) strictly inside.
    pub fn split_points(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut pts = vec![lo, hi];
        let mut push = |x: f64| {
            let k0 = ((lo - x) / TAU).ceil();
            let mut y = x + k0 * TAU;
            while y < hi {
                if y > lo {
                    pts.push(y);
                }
                y += TAU;
            }
        };
        for j in &self.junctions {
            push(j.angle);
        }
        for p in &self.pieces {
            for &k in &p.knots {
                push(k);
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14);
        pts
    }

    /// Smooth sub-arcs `(a, b, f)` of one turn, split at junctions and knots.
    pub(crate) fn smooth_arcs(&self) -> Vec<(f64, f64, &ArcFn)> {
        let mut out = Vec::new();
        let mut a = self.start;
        for p in &self.pieces {
            let mut pts = vec![a];
            pts.extend(p.knots.iter().copied().filter(|&k| k > a && k < p.end));
            pts.push(p.end);
            for w in pts.windows(2) {
                out.push((w[0], w[1], &p.f));
            }
            a = p.end;
        }
        out
    }

    /// Pointwise sup over `samples` equispaced angles plus every junction side.
    pub fn sup_estimate(&self, samples: usize) -> f64 {
        let mut m = self
            .junctions
            .iter()
            .map(|j| j.minus.abs().max(j.plus.abs()))
            .fold(0.0, f64::max);
        for k in 0..samples {
            m = m.max(self.eval(TAU * k as f64 / samples as f64).abs());
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn indicator_limits_and_convention() {
        let g = BoundaryFn::arc_indicator(1.0).unwrap();
        assert_eq!(g.eval(0.0), 1.0);
        assert_eq!(g.eval(PI), 0.0);
        // g⁺ at the junctions
        assert_eq!(g.eval(1.0), 0.0);
        assert_eq!(g.eval(-1.0), 1.0);
        assert_eq!(g.eval(TAU - 1.0), 1.0);
        assert_eq!(g.one_sided_limits(1.0), Some((1.0, 0.0)));
        assert_eq!(g.one_sided_limits(-1.0), Some((0.0, 1.0)));
        assert_eq!(g.breakpoints().len(), 2);
    }

    #[test]
    fn stored_limits_match_pieces() {
        let g = BoundaryFn::two_arcs(0.7, arc_fn(|t| t.cos()), arc_fn(|t| t * t)).unwrap();
        let (m, p) = g.one_sided_limits(0.7).unwrap();
        assert!((m - 0.7f64.cos()).abs() < 1e-12);
        assert!((p - 0.49).abs() < 1e-12);
        let (m, p) = g.one_sided_limits(-0.7).unwrap();
        assert!((m - (TAU - 0.7).powi(2)).abs() < 1e-12);
        assert!((p - 0.7f64.cos()).abs() < 1e-12);
    }

    #[test]
    fn continuous_function_has_no_breakpoints() {
        let g = BoundaryFn::from_fn(arc_fn(|t| t.sin()));
        assert!(g.breakpoints().is_empty());
        assert_eq!(g.junctions().len(), 1);
        assert!((g.eval(-PI / 2.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn split_points_cover_window() {
        let g = BoundaryFn::arc_indicator(1.0).unwrap();
        let pts = g.split_points(-PI, PI);
        assert_eq!(pts.len(), 4);
        assert!((pts[1] + 1.0).abs() < 1e-14 && (pts[2] - 1.0).abs() < 1e-14);
        let pts = g.split_points(2.0, 2.0 + TAU);
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn builder_rejects_partial_cover() {
        let r = BoundaryFn::builder(0.0).piece(3.0, arc_fn(|_| 0.0)).build();
        assert!(r.is_err());
        let r = BoundaryFn::builder(0.0)
            .piece(3.0, arc_fn(|_| 0.0))
            .piece(2.0, arc_fn(|_| 0.0))
            .build();
        assert!(r.is_err());
    }
}
