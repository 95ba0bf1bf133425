//! Sweep distance: an additive upper bound on continuous dynamic time
//! warping, plus the flattened-grid lower bound.
//!
//! Along a segment of a morphing inside one cell both points move linearly,
//! so the leash is `|w0 + t·dw|` and the warping cost of the segment is
//! `(|Δx| + |Δy|)·∫₀¹ |w0 + t·dw| dt`, a square root of a quadratic.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{check_pair, Curve};
use crate::morphing::Morphing;
use crate::retract::{shortest_path, ImplicitGraph};
use crate::ve::{CellElevation, VeGraph, VeNode};

/// `√(a x² + b x + c)` with `a >= 0` and non-positive discriminant (up to
/// rounding), so that the radicand is non-negative everywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticUnderRoot {
    a: f64,
    b: f64,
    c: f64,
}

const REL: f64 = 1e-12;

impl QuadraticUnderRoot {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::NonFinite);
        }
        if a < 0.0 {
            return Err(Error::InvalidParameter(format!("leading coefficient {a} is negative")));
        }
        // With a > 0 the radicand must stay non-negative everywhere; a linear
        // radicand is checked against the integration interval instead.
        let disc = b * b - 4.0 * a * c;
        if a > 0.0 && disc > 1e-9 * (b * b).max((4.0 * a * c).abs()) {
            return Err(Error::NegativeRadicand(disc));
        }
        Ok(QuadraticUnderRoot { a, b, c })
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.a * x * x + self.b * x + self.c).max(0.0).sqrt()
    }
}

/// `∫_{u0}^{u1} √(u² + k²) du` computed without cancellation.
fn centered(u0: f64, u1: f64, k2: f64) -> f64 {
    let du = u1 - u0;
    let span = u0.abs().max(u1.abs());
    if k2 <= REL * span * span {
        // Perfect square: ∫|u|.
        return if u0 >= 0.0 {
            0.5 * du * (u0 + u1)
        } else if u1 <= 0.0 {
            -0.5 * du * (u0 + u1)
        } else {
            0.5 * (u0 * u0 + u1 * u1)
        };
    }
    let (r0, r1) = ((u0 * u0 + k2).sqrt(), (u1 * u1 + k2).sqrt());
    let s = u0 + u1;
    // u1 r1 - u0 r0
    let prod = du * (0.5 * (r0 + r1) + 0.5 * s * s / (r0 + r1));
    let k = k2.sqrt();
    let (al, be) = (u1 / k, u0 / k);
    let ash = if al * be > 0.0 {
        let (sa, sb) = ((1.0 + be * be).sqrt(), (1.0 + al * al).sqrt());
        let d = (al - be) * (al + be) / (al * sa + be * sb);
        d.asinh()
    } else {
        al.asinh() - be.asinh()
    };
    0.5 * (prod + k2 * ash)
}

/// `∫_{x0}^{x1} √(a x² + b x + c) dx`.
pub fn integral_sqrt_quadratic(q: &QuadraticUnderRoot, x0: f64, x1: f64) -> Result<f64> {
    if !(x0 <= x1) {
        return Err(Error::InvalidParameter(format!("interval [{x0}, {x1}] is reversed")));
    }
    let QuadraticUnderRoot { a, b, c } = *q;
    let x = x0.abs().max(x1.abs());
    if a * x * x <= REL * (b.abs() * x + c.abs()) {
        let tol = 1e-12 * (b.abs() * x + c.abs());
        for r in [b * x0 + c, b * x1 + c] {
            if r < -tol {
                return Err(Error::NegativeRadicand(r));
            }
        }
        return Ok(linear_root(b, c, x0, x1));
    }
    let shift = b / (2.0 * a);
    let k2 = ((4.0 * a * c - b * b) / (4.0 * a * a)).max(0.0);
    Ok(a.sqrt() * centered(x0 + shift, x1 + shift, k2))
}

// ∫√(bx + c) with the radicand clipped at zero.
fn linear_root(b: f64, c: f64, x0: f64, x1: f64) -> f64 {
    let x = x0.abs().max(x1.abs());
    if b.abs() * x <= REL * c.abs() {
        return c.max(0.0).sqrt() * (x1 - x0);
    }
    let f = |x: f64| (b * x + c).max(0.0).powf(1.5);
    2.0 / (3.0 * b) * (f(x1) - f(x0))
}

/// `∫₀¹ |w0 + t·dw| dt` for vectors `w0`, `dw`.
fn mean_leash(w0: &[f64], dw: &[f64]) -> f64 {
    let mut a = 0.0;
    let mut b = 0.0;
    let mut c = 0.0;
    let mut cross = 0.0;
    for i in 0..w0.len() {
        a += dw[i] * dw[i];
        b += w0[i] * dw[i];
        c += w0[i] * w0[i];
        for j in i + 1..w0.len() {
            let z = w0[i] * dw[j] - w0[j] * dw[i];
            cross += z * z;
        }
    }
    if a <= REL * c {
        return c.sqrt();
    }
    // a t² + 2b t + c = a((t + b/a)² + k²) with k² = |w0 × dw|² / a².
    let shift = b / a;
    a.sqrt() * centered(shift, 1.0 + shift, cross / (a * a))
}

/// Price of the linear morphing between directed subsegments `p0p1` of the
/// first curve and `q0q1` of the second: the integral of the leash length
/// over both subsegments.
pub fn edge_price(p0: &[f64], p1: &[f64], q0: &[f64], q1: &[f64]) -> Result<f64> {
    let d = p0.len();
    if p1.len() != d || q0.len() != d || q1.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: q0.len().max(p1.len()).max(q1.len()) });
    }
    let w0: Vec<f64> = (0..d).map(|k| p0[k] - q0[k]).collect();
    let dw: Vec<f64> = (0..d).map(|k| (p1[k] - q1[k]) - w0[k]).collect();
    let len = |u: &[f64], v: &[f64]| crate::geometry::dist_slice(u, v);
    Ok((len(p0, p1) + len(q0, q1)) * mean_leash(&w0, &dw))
}

fn segment_price(a: &Curve, b: &Curve, from: (f64, f64), to: (f64, f64), buf: &mut [Vec<f64>; 4]) -> f64 {
    let [p0, p1, q0, q1] = buf;
    a.eval_into(from.0, p0);
    a.eval_into(to.0, p1);
    b.eval_into(from.1, q0);
    b.eval_into(to.1, q1);
    let w0: Vec<f64> = (0..p0.len()).map(|k| p0[k] - q0[k]).collect();
    let dw: Vec<f64> = (0..p0.len()).map(|k| (p1[k] - q1[k]) - w0[k]).collect();
    ((to.0 - from.0).abs() + (to.1 - from.1).abs()) * mean_leash(&w0, &dw)
}

/// Warping cost of a morphing: the sum of the segment prices after cutting
/// the morphing at the grid lines.
pub fn warping_cost(m: &Morphing) -> f64 {
    let m = m.split_at_grid();
    let (a, b) = (m.curve_a(), m.curve_b());
    let d = a.dim();
    let mut buf = [vec![0.0; d], vec![0.0; d], vec![0.0; d], vec![0.0; d]];
    m.points().windows(2).map(|w| segment_price(a, b, w[0], w[1], &mut buf)).sum()
}

/// Outcome of [`sweep_distance`].
#[derive(Debug, Clone)]
pub struct SweepResult {
    /// Warping cost of `morphing`.
    pub value: f64,
    /// A monotone morphing between the input curves.
    pub morphing: Morphing,
    pub refinement_rounds: usize,
    /// The round cap was hit and the last path was monotonized directly.
    pub capped: bool,
}

struct PricedVe<'a> {
    g: VeGraph<'a>,
    a: &'a Curve,
    b: &'a Curve,
}

impl ImplicitGraph for PricedVe<'_> {
    type Node = VeNode;

    fn start(&self) -> VeNode {
        VeNode::Start
    }

    fn is_target(&self, node: VeNode) -> bool {
        node == VeNode::End
    }

    fn successors(&self, node: VeNode, out: &mut Vec<(VeNode, f64)>) {
        let mut next = Vec::with_capacity(2);
        self.g.successor_nodes(node, &mut next);
        let from = self.g.node_info(node);
        let d = self.a.dim();
        let mut buf = [vec![0.0; d], vec![0.0; d], vec![0.0; d], vec![0.0; d]];
        for v in next {
            let to = self.g.node_info(v);
            out.push((v, segment_price(self.a, self.b, (from.x, from.y), (to.x, to.y), &mut buf)));
        }
    }
}

/// Default round cap of [`sweep_distance`].
pub const SWEEP_MAX_ROUNDS: usize = 10;

/// Shortest path in the VE graph under segment prices; backward portions are
/// refined at their midpoints until the path is monotone.
pub fn sweep_distance(a: &Curve, b: &Curve, max_rounds: usize) -> Result<SweepResult> {
    check_pair(a, b)?;
    let (a0, b0) = (Arc::new(a.clone()), Arc::new(b.clone()));
    let (mut ca, mut cb) = (a0.clone(), b0.clone());
    let mut round = 0;
    loop {
        let g = VeGraph::new(&ca, &cb)?;
        let path = shortest_path(&PricedVe { g, a: &ca, b: &cb })?;
        let m = Morphing::new(ca.clone(), cb.clone(), g.path_points(&path.path))?;
        let monotone = m.is_monotone();
        let mut pa = Vec::new();
        let mut pb = Vec::new();
        if !monotone && round < max_rounds {
            let (x, y) = m.backtrack_intervals();
            pa.extend(x.iter().map(|&(lo, hi)| 0.5 * (lo + hi)));
            pb.extend(y.iter().map(|&(lo, hi)| 0.5 * (lo + hi)));
        }
        let (na, _) = ca.refine_at(&pa);
        let (nb, _) = cb.refine_at(&pb);
        if monotone || (na.len() == ca.len() && nb.len() == cb.len()) {
            let morphing = m.monotonize().with_curves(a0, b0)?;
            return Ok(SweepResult {
                value: warping_cost(&morphing),
                morphing,
                refinement_rounds: round,
                capped: !monotone,
            });
        }
        ca = Arc::new(na);
        cb = Arc::new(nb);
        round += 1;
    }
}

/// Inserts a vertex in the middle of every edge.
pub fn split(c: &Curve) -> Curve {
    let mids: Vec<f64> = (0..c.edge_count()).map(|e| 0.5 * (c.prefix(e) + c.prefix(e + 1))).collect();
    c.refine_at(&mids).0
}

/// Shortest monotone path along the grid lines of the free-space diagram,
/// where a grid edge costs its length times the smaller minimum elevation of
/// its adjacent cells.
pub fn cdtw_lower_bound(a: &Curve, b: &Curve) -> Result<f64> {
    check_pair(a, b)?;
    let (n, m) = (a.len(), b.len());
    // Row j of cell minima (cells (i, j), i < n-1).
    let row_min = |j: usize| -> Result<Vec<f64>> {
        (0..n - 1).map(|i| Ok(CellElevation::of_curves(a, b, i, j)?.min_elevation())).collect()
    };
    let mut below: Option<Vec<f64>> = None;
    let mut dist = vec![f64::INFINITY; n];
    dist[0] = 0.0;
    for j in 0..m {
        let above = if j + 1 < m { Some(row_min(j)?) } else { None };
        let flat = |i: usize| -> f64 {
            let x = below.as_ref().map_or(f64::INFINITY, |r| r[i]);
            let y = above.as_ref().map_or(f64::INFINITY, |r| r[i]);
            x.min(y)
        };
        if j > 0 {
            let row = below.as_ref().unwrap();
            let lb = b.edge_length(j - 1);
            for (i, d) in dist.iter_mut().enumerate() {
                let left = if i > 0 { row[i - 1] } else { f64::INFINITY };
                let right = if i + 1 < n { row[i] } else { f64::INFINITY };
                *d += left.min(right) * lb;
            }
        }
        for i in 1..n {
            let h = dist[i - 1] + flat(i - 1) * a.edge_length(i - 1);
            dist[i] = dist[i].min(h);
        }
        below = above;
    }
    Ok(dist[n - 1])
}
