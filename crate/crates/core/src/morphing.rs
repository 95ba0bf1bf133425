//! Morphings as polygonal paths in the parameter rectangle
//! `[0, |A|] x [0, |B|]`, and the operations on them: width, direct
//! monotonization, composition and extraction of backward portions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{dist_slice, Curve};

/// A morphing between two curves, stored as its parameter-space vertices
/// `(x, y)` with `x` an arc length on the first curve and `y` on the second.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphing {
    a: Arc<Curve>,
    b: Arc<Curve>,
    points: Vec<(f64, f64)>,
}

fn snap(v: f64, len: f64) -> Result<f64> {
    let tol = 1e-9 * len;
    if !v.is_finite() || v < -tol || v > len + tol {
        return Err(Error::OutOfRange { value: v, min: 0.0, max: len });
    }
    Ok(v.clamp(0.0, len))
}

impl Morphing {
    /// Validates endpoints and ranges (tolerance `1e-9` times the curve length)
    /// and snaps them exactly.
    pub fn new(a: Arc<Curve>, b: Arc<Curve>, points: Vec<(f64, f64)>) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
        }
        if points.len() < 2 {
            return Err(Error::InvalidParameter("a morphing needs at least two points".into()));
        }
        let (la, lb) = (a.length(), b.length());
        let mut pts = Vec::with_capacity(points.len());
        for &(x, y) in &points {
            pts.push((snap(x, la)?, snap(y, lb)?));
        }
        let tol_a = 1e-9 * la;
        let tol_b = 1e-9 * lb;
        let first = pts[0];
        let last = *pts.last().unwrap();
        if first.0 > tol_a || first.1 > tol_b || la - last.0 > tol_a || lb - last.1 > tol_b {
            return Err(Error::InvalidParameter("morphing must run from (0,0) to (|A|,|B|)".into()));
        }
        pts[0] = (0.0, 0.0);
        *pts.last_mut().unwrap() = (la, lb);
        Ok(Morphing { a, b, points: pts })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn curve_a(&self) -> &Arc<Curve> {
        &self.a
    }

    pub fn curve_b(&self) -> &Arc<Curve> {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same morphing attached to other curves with the same
    /// parameterization (e.g. the originals of refined curves).
    pub fn with_curves(&self, a: Arc<Curve>, b: Arc<Curve>) -> Result<Morphing> {
        Morphing::new(a, b, self.points.clone())
    }

    /// The morphing seen from the second curve.
    pub fn transpose(&self) -> Morphing {
        Morphing {
            a: self.b.clone(),
            b: self.a.clone(),
            points: self.points.iter().map(|&(x, y)| (y, x)).collect(),
        }
    }

    /// Distance between `A(x)` and `B(y)`.
    pub fn elevation_at(&self, x: f64, y: f64) -> f64 {
        let mut pa = vec![0.0; self.a.dim()];
        let mut pb = vec![0.0; self.b.dim()];
        self.a.eval_into(x, &mut pa);
        self.b.eval_into(y, &mut pb);
        dist_slice(&pa, &pb)
    }

    /// Leash length at every vertex of the morphing.
    pub fn leashes(&self) -> Vec<f64> {
        let mut pa = vec![0.0; self.a.dim()];
        let mut pb = vec![0.0; self.b.dim()];
        self.points
            .iter()
            .map(|&(x, y)| {
                self.a.eval_into(x, &mut pa);
                self.b.eval_into(y, &mut pb);
                dist_slice(&pa, &pb)
            })
            .collect()
    }

    /// Index of the first segment that does not lie inside a single cell.
    pub fn first_spanning_segment(&self) -> Option<usize> {
        let (pa, pb) = (self.a.prefix_lengths(), self.b.prefix_lengths());
        let (ta, tb) = (1e-12 * self.a.length(), 1e-12 * self.b.length());
        self.points
            .windows(2)
            .position(|w| !within_one_edge(pa, w[0].0, w[1].0, ta) || !within_one_edge(pb, w[0].1, w[1].1, tb))
    }

    /// Maximum leash over the vertices. By convexity of the elevation inside
    /// a cell this is the width when every segment lies inside one cell.
    pub fn width(&self) -> Result<f64> {
        if let Some(k) = self.first_spanning_segment() {
            return Err(Error::NotWellBehaved(k));
        }
        Ok(self.leashes().into_iter().fold(0.0, f64::max))
    }

    /// True iff both coordinate sequences are non-decreasing (exact comparison).
    pub fn is_monotone(&self) -> bool {
        self.points.windows(2).all(|w| w[1].0 >= w[0].0 && w[1].1 >= w[0].1)
    }

    /// Direct monotonization: prefix maxima of both coordinates.
    pub fn monotonize(&self) -> Morphing {
        let mut mx = f64::NEG_INFINITY;
        let mut my = f64::NEG_INFINITY;
        let points = self
            .points
            .iter()
            .map(|&(x, y)| {
                mx = mx.max(x);
                my = my.max(y);
                (mx, my)
            })
            .collect();
        Morphing { a: self.a.clone(), b: self.b.clone(), points }
    }

    /// Maximal arc-length intervals over which `x` (resp. `y`) strictly decreases.
    pub fn backtrack_intervals(&self) -> (Vec<(f64, f64)>, Vec<(f64, f64)>) {
        let xs: Vec<f64> = self.points.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = self.points.iter().map(|p| p.1).collect();
        (decreasing_runs(&xs), decreasing_runs(&ys))
    }

    /// Index ranges `[k0, k1]` of the maximal strictly decreasing runs of one
    /// coordinate (0 for `x`, 1 for `y`).
    pub(crate) fn decreasing_index_runs(&self, axis: usize) -> Vec<(usize, usize)> {
        let c = |k: usize| if axis == 0 { self.points[k].0 } else { self.points[k].1 };
        let mut runs = Vec::new();
        let mut k = 0;
        while k + 1 < self.points.len() {
            if c(k + 1) < c(k) {
                let s = k;
                while k + 1 < self.points.len() && c(k + 1) < c(k) {
                    k += 1;
                }
                runs.push((s, k));
            } else {
                k += 1;
            }
        }
        runs
    }

    /// Inserts the crossings of segments with vertex lines, so that every
    /// segment lies inside one cell.
    pub fn split_at_grid(&self) -> Morphing {
        let (pa, pb) = (self.a.prefix_lengths(), self.b.prefix_lengths());
        let mut out = Vec::with_capacity(self.points.len());
        out.push(self.points[0]);
        let mut cuts: Vec<(f64, Option<f64>, Option<f64>)> = Vec::new();
        for w in self.points.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            cuts.clear();
            for (lines, c0, c1, axis) in [(pa, x0, x1, 0), (pb, y0, y1, 1)] {
                let (lo, hi) = if c0 <= c1 { (c0, c1) } else { (c1, c0) };
                let start = lines.partition_point(|&v| v <= lo);
                for &v in &lines[start..] {
                    if v >= hi {
                        break;
                    }
                    let lam = (v - c0) / (c1 - c0);
                    cuts.push(if axis == 0 { (lam, Some(v), None) } else { (lam, None, Some(v)) });
                }
            }
            cuts.sort_by(|p, q| p.0.total_cmp(&q.0));
            for &(lam, sx, sy) in &cuts {
                let x = sx.unwrap_or(x0 + lam * (x1 - x0));
                let y = sy.unwrap_or(y0 + lam * (y1 - y0));
                out.push((x, y));
            }
            out.push((x1, y1));
        }
        out.dedup();
        Morphing { a: self.a.clone(), b: self.b.clone(), points: out }
    }

    /// Number of interior vertices (of both curves) whose line the morphing
    /// crosses backward, i.e. is strictly on the far side and later strictly
    /// on the near side again.
    pub fn vertex_monotonicity_violations(&self) -> usize {
        let mut count = 0;
        for (axis, prefix) in [(0, self.a.prefix_lengths()), (1, self.b.prefix_lengths())] {
            let interior = &prefix[1..prefix.len() - 1];
            let mut bad = vec![false; interior.len()];
            let mut mx = f64::NEG_INFINITY;
            for &(x, y) in &self.points {
                let c = if axis == 0 { x } else { y };
                if c < mx {
                    let s = interior.partition_point(|&v| v <= c);
                    for (k, &v) in interior.iter().enumerate().skip(s) {
                        if v >= mx {
                            break;
                        }
                        bad[k] = true;
                    }
                }
                mx = mx.max(c);
            }
            count += bad.iter().filter(|&&b| b).count();
        }
        count
    }
}

fn within_one_edge(prefix: &[f64], c0: f64, c1: f64, tol: f64) -> bool {
    let (lo, hi) = if c0 <= c1 { (c0, c1) } else { (c1, c0) };
    let e = prefix.len() - 1;
    let i = prefix.partition_point(|&v| v <= lo + tol).clamp(1, e) - 1;
    hi <= prefix[i + 1] + tol
}

fn decreasing_runs(c: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut k = 0;
    while k + 1 < c.len() {
        if c[k + 1] < c[k] {
            let hi = c[k];
            while k + 1 < c.len() && c[k + 1] < c[k] {
                k += 1;
            }
            out.push((c[k], hi));
        } else {
            k += 1;
        }
    }
    out
}

/// Composition of monotone morphings `m1: A -> B` and `m2: B -> C` into a
/// morphing `A -> C`.
///
/// Both are swept together over their shared `B` coordinate. Where one of
/// them is constant in `B` (a run of points with equal `y`), its motion is
/// emitted first for `m1` and then for `m2`; where `m2` is constant over an
/// interval of its input, that whole interval maps to one output value.
pub fn combine(m1: &Morphing, m2: &Morphing) -> Result<Morphing> {
    if !m1.is_monotone() || !m2.is_monotone() {
        return Err(Error::Precondition("combine needs monotone morphings".into()));
    }
    let (lb1, lb2) = (m1.b.length(), m2.a.length());
    if (lb1 - lb2).abs() > 1e-9 * lb1.max(lb2) {
        return Err(Error::DomainMismatch(format!("middle curve lengths {lb1} and {lb2}")));
    }
    let p1 = &m1.points;
    // m2 rescaled onto m1's copy of the middle parameter.
    let scale = if lb2 > 0.0 { lb1 / lb2 } else { 1.0 };
    let mut p2: Vec<(f64, f64)> = m2.points.iter().map(|&(y, z)| ((y * scale).min(lb1), z)).collect();
    p2.last_mut().unwrap().0 = lb1;
    let (n1, n2) = (p1.len(), p2.len());
    let (mut i, mut j) = (0, 0);
    let (mut cx, mut cz) = (p1[0].0, p2[0].1);
    let mut y = 0.0;
    let mut out = vec![(cx, cz)];
    loop {
        while i + 1 < n1 && p1[i + 1].1 <= y {
            i += 1;
            cx = p1[i].0;
            out.push((cx, cz));
        }
        while j + 1 < n2 && p2[j + 1].0 <= y {
            j += 1;
            cz = p2[j].1;
            out.push((cx, cz));
        }
        if i + 1 >= n1 && j + 1 >= n2 {
            break;
        }
        let ny1 = if i + 1 < n1 { p1[i + 1].1 } else { f64::INFINITY };
        let ny2 = if j + 1 < n2 { p2[j + 1].0 } else { f64::INFINITY };
        let ny = ny1.min(ny2);
        if ny1 == ny {
            i += 1;
            cx = p1[i].0;
        } else {
            let (a0, a1) = (p1[i], p1[i + 1]);
            cx = a0.0 + (ny - a0.1) / (a1.1 - a0.1) * (a1.0 - a0.0);
        }
        if ny2 == ny {
            j += 1;
            cz = p2[j].1;
        } else {
            let (b0, b1) = (p2[j], p2[j + 1]);
            cz = b0.1 + (ny - b0.0) / (b1.0 - b0.0) * (b1.1 - b0.1);
        }
        y = ny;
        out.push((cx, cz));
    }
    out.dedup();
    Morphing::new(m1.a.clone(), m2.b.clone(), out)
}
