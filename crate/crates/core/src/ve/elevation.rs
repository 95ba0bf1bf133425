//! Elevation of a free-space cell and the vertex-edge portals.
//!
//! For the cell of edges `p_start -> p_end` (unit direction `p̂`, length `Lp`)
//! and `q_start -> q_end` (`q̂`, `Lq`), with `u = p_start - q_start`, the
//! squared elevation at local arc lengths `(s, t)` is
//!
//! ```text
//! E(s,t) = |u|² + 2⟨u, s·p̂ − t·q̂⟩ + s² − 2st⟨p̂,q̂⟩ + t²
//! ```
//!
//! and the elevation is `√E`, a convex function on the cell.

use crate::error::{Error, Result};
use crate::geometry::{dist_slice, dot, nearest_param, Curve, Point, Segment};

/// Squared-elevation data for one free-space cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellElevation {
    p0: Vec<f64>,
    q0: Vec<f64>,
    p_hat: Vec<f64>,
    q_hat: Vec<f64>,
    /// Length of the edge of the first curve.
    pub lp: f64,
    /// Length of the edge of the second curve.
    pub lq: f64,
    /// `|u|²`
    pub u_sq: f64,
    /// `⟨u, p̂⟩`
    pub u_p: f64,
    /// `⟨u, q̂⟩`
    pub u_q: f64,
    /// `⟨p̂, q̂⟩`
    pub dot_pq: f64,
}

/// An affine map `x -> slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub slope: f64,
    pub intercept: f64,
}

impl Affine {
    pub fn eval(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

fn unit(a: &[f64], b: &[f64]) -> (Vec<f64>, f64) {
    let l = dist_slice(a, b);
    (a.iter().zip(b).map(|(x, y)| (y - x) / l).collect(), l)
}

impl CellElevation {
    /// Cell spanned by edge `ea` of the first curve and `eb` of the second.
    pub fn new(ea: &Segment, eb: &Segment) -> Result<Self> {
        if ea.start.dim() != eb.start.dim() || ea.end.dim() != eb.end.dim() {
            return Err(Error::DimensionMismatch { expected: ea.start.dim(), found: eb.start.dim() });
        }
        Self::from_slices(ea.start.coords(), ea.end.coords(), eb.start.coords(), eb.end.coords())
    }

    /// Cell `(i, j)` of the free space of `a` and `b`.
    pub fn of_curves(a: &Curve, b: &Curve, i: usize, j: usize) -> Result<Self> {
        Self::from_slices(a.vertex(i), a.vertex(i + 1), b.vertex(j), b.vertex(j + 1))
    }

    pub(crate) fn from_slices(p0: &[f64], p1: &[f64], q0: &[f64], q1: &[f64]) -> Result<Self> {
        let (p_hat, lp) = unit(p0, p1);
        let (q_hat, lq) = unit(q0, q1);
        if lp == 0.0 || lq == 0.0 {
            return Err(Error::DegenerateCurve);
        }
        let u: Vec<f64> = p0.iter().zip(q0).map(|(x, y)| x - y).collect();
        Ok(CellElevation {
            u_sq: dot(&u, &u),
            u_p: dot(&u, &p_hat),
            u_q: dot(&u, &q_hat),
            dot_pq: dot(&p_hat, &q_hat),
            p0: p0.to_vec(),
            q0: q0.to_vec(),
            p_hat,
            q_hat,
            lp,
            lq,
        })
    }

    /// `E(s, t)` from the quadratic form (no range check).
    pub fn squared(&self, s: f64, t: f64) -> f64 {
        self.u_sq + 2.0 * (s * self.u_p - t * self.u_q) + s * s - 2.0 * s * t * self.dot_pq + t * t
    }

    /// Elevation by direct construction of the two points.
    pub(crate) fn eval(&self, s: f64, t: f64) -> f64 {
        let mut acc = 0.0;
        for k in 0..self.p0.len() {
            let d = (self.p0[k] + s * self.p_hat[k]) - (self.q0[k] + t * self.q_hat[k]);
            acc += d * d;
        }
        acc.sqrt()
    }

    /// Minimum elevation over the closed cell.
    pub fn min_elevation(&self) -> f64 {
        let det = 1.0 - self.dot_pq * self.dot_pq;
        if det > 1e-12 {
            let s = (-self.u_p + self.dot_pq * self.u_q) / det;
            let t = (self.u_q - self.dot_pq * self.u_p) / det;
            if (0.0..=self.lp).contains(&s) && (0.0..=self.lq).contains(&t) {
                return self.eval(s, t);
            }
        }
        // The minimum of a convex function outside the stationary point lies on the boundary.
        let p1: Vec<f64> = (0..self.p0.len()).map(|k| self.p0[k] + self.lp * self.p_hat[k]).collect();
        let q1: Vec<f64> = (0..self.q0.len()).map(|k| self.q0[k] + self.lq * self.q_hat[k]).collect();
        [
            nearest_param(&self.p0, &self.q0, &q1).1,
            nearest_param(&p1, &self.q0, &q1).1,
            nearest_param(&self.q0, &self.p0, &p1).1,
            nearest_param(&q1, &self.p0, &p1).1,
        ]
        .into_iter()
        .fold(f64::INFINITY, f64::min)
    }
}

fn check_range(v: f64, max: f64) -> Result<f64> {
    let tol = 1e-9 * max.max(1.0);
    if !v.is_finite() || v < -tol || v > max + tol {
        return Err(Error::OutOfRange { value: v, min: 0.0, max });
    }
    Ok(v.clamp(0.0, max))
}

/// Elevation at local arc lengths `(s, t)` inside the cell.
pub fn elevation_in_cell(cell: &CellElevation, s: f64, t: f64) -> Result<f64> {
    let s = check_range(s, cell.lp)?;
    let t = check_range(t, cell.lq)?;
    Ok(cell.eval(s, t))
}

/// Partial derivatives `(∂E/∂s, ∂E/∂t)` of the squared elevation.
pub fn elevation_gradient(cell: &CellElevation, s: f64, t: f64) -> (f64, f64) {
    let ds = 2.0 * cell.u_p + 2.0 * s - 2.0 * t * cell.dot_pq;
    let dt = -2.0 * cell.u_q - 2.0 * s * cell.dot_pq + 2.0 * t;
    (ds, dt)
}

/// Minimum lines of the cell: `h(α)` minimizes `E(·, α)`, `v(β)` minimizes `E(β, ·)`.
/// Neither is clamped to the cell.
pub fn min_lines(cell: &CellElevation) -> (Affine, Affine) {
    (
        Affine { slope: cell.dot_pq, intercept: -cell.u_p },
        Affine { slope: cell.dot_pq, intercept: cell.u_q },
    )
}

/// Portal of `vertex` on `edge`: the nearest point's parameter and its distance.
pub fn portal(vertex: &Point, edge: &Segment) -> Result<(f64, f64)> {
    if vertex.dim() != edge.start.dim() {
        return Err(Error::DimensionMismatch { expected: edge.start.dim(), found: vertex.dim() });
    }
    Ok(nearest_param(vertex.coords(), edge.start.coords(), edge.end.coords()))
}
