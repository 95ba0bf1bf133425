//! Points, segments and polygonal curves parameterized by arc length.
//!
//! A [`Curve`] stores its vertices in one flat buffer together with the
//! prefix arc lengths, so that `prefix[i]` is the distance travelled along
//! the curve when reaching vertex `i`.

use crate::error::{Error, Result};

/// A point in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("point without coordinates".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Point { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

impl From<&[f64]> for Point {
    fn from(c: &[f64]) -> Self {
        Point { coords: c.to_vec() }
    }
}

/// Euclidean distance between two points of equal dimension.
pub fn dist(p: &Point, q: &Point) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    Ok(dist_slice(&p.coords, &q.coords))
}

#[inline]
pub(crate) fn dist_sq_slice(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub(crate) fn dist_slice(a: &[f64], b: &[f64]) -> f64 {
    dist_sq_slice(a, b).sqrt()
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest point on segment `ab` to `p`: returns `(t, dist)` with `t` in `[0, 1]`.
/// A degenerate segment yields `t = 0`.
#[inline]
pub(crate) fn nearest_param(p: &[f64], a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut len_sq = 0.0;
    let mut proj = 0.0;
    for k in 0..p.len() {
        let d = b[k] - a[k];
        len_sq += d * d;
        proj += (p[k] - a[k]) * d;
    }
    let t = if len_sq > 0.0 { (proj / len_sq).clamp(0.0, 1.0) } else { 0.0 };
    let mut s = 0.0;
    for k in 0..p.len() {
        let f = a[k] + t * (b[k] - a[k]);
        s += (p[k] - f) * (p[k] - f);
    }
    (t, s.sqrt())
}

/// A directed line segment.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Result<Self> {
        if start.dim() != end.dim() {
            return Err(Error::DimensionMismatch { expected: start.dim(), found: end.dim() });
        }
        Ok(Segment { start, end })
    }

    pub fn length(&self) -> f64 {
        dist_slice(self.start.coords(), self.end.coords())
    }

    pub fn point_at(&self, t: f64) -> Point {
        let c = lerp(self.start.coords(), self.end.coords(), t);
        Point { coords: c }
    }
}

pub(crate) fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Closest point of `s` to `p`, as `(t, foot, dist)`.
pub fn nearest_on_segment(p: &Point, s: &Segment) -> Result<(f64, Point, f64)> {
    if p.dim() != s.start.dim() {
        return Err(Error::DimensionMismatch { expected: s.start.dim(), found: p.dim() });
    }
    let (t, d) = nearest_param(p.coords(), s.start.coords(), s.end.coords());
    Ok((t, s.point_at(t), d))
}

/// A polygonal curve with cached prefix arc lengths.
///
/// Consecutive duplicate vertices are removed on construction. A curve that
/// collapses to a single location is kept as two coincident vertices and is
/// reported as degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    dim: usize,
    coords: Vec<f64>,
    prefix: Vec<f64>,
}

impl Curve {
    /// Builds a curve from vertices, dropping zero-length edges.
    pub fn new(points: &[Point]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyCurve)?;
        let dim = first.dim();
        let mut flat = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
            flat.extend_from_slice(p.coords());
        }
        Curve::from_flat(dim, flat)
    }

    /// Builds a curve from a flat coordinate buffer of `dim`-tuples.
    pub fn from_flat(dim: usize, flat: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if flat.is_empty() {
            return Err(Error::EmptyCurve);
        }
        if flat.len() % dim != 0 {
            return Err(Error::InvalidParameter("coordinate count not a multiple of dimension".into()));
        }
        if flat.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut coords: Vec<f64> = Vec::with_capacity(flat.len());
        let mut prefix = Vec::with_capacity(flat.len() / dim);
        for v in flat.chunks_exact(dim) {
            match prefix.last().copied() {
                None => {
                    coords.extend_from_slice(v);
                    prefix.push(0.0);
                }
                Some(last) => {
                    let l = dist_slice(&coords[coords.len() - dim..], v);
                    if l > 0.0 {
                        coords.extend_from_slice(v);
                        prefix.push(last + l);
                    }
                }
            }
        }
        if prefix.len() == 1 {
            let v = coords.clone();
            coords.extend_from_slice(&v);
            prefix.push(0.0);
        }
        Ok(Curve { dim, coords, prefix })
    }

    /// Curve with explicitly given prefix lengths. Used by refinement, which
    /// keeps the arc-length parameterization of the curve it subdivides.
    pub(crate) fn with_prefix(dim: usize, coords: Vec<f64>, prefix: Vec<f64>) -> Self {
        debug_assert_eq!(coords.len(), prefix.len() * dim);
        Curve { dim, coords, prefix }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.prefix.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    /// True when the curve is a single location.
    pub fn is_degenerate(&self) -> bool {
        self.length() == 0.0
    }

    pub fn length(&self) -> f64 {
        *self.prefix.last().unwrap()
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn point(&self, i: usize) -> Point {
        Point { coords: self.vertex(i).to_vec() }
    }

    pub fn points(&self) -> Vec<Point> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn prefix_lengths(&self) -> &[f64] {
        &self.prefix
    }

    #[inline]
    pub fn prefix(&self, i: usize) -> f64 {
        self.prefix[i]
    }

    #[inline]
    pub fn edge_length(&self, i: usize) -> f64 {
        self.prefix[i + 1] - self.prefix[i]
    }

    pub fn segment(&self, i: usize) -> Segment {
        Segment { start: self.point(i), end: self.point(i + 1) }
    }

    pub(crate) fn require_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateCurve)
        } else {
            Ok(())
        }
    }

    /// Edge containing arc length `x` and the local parameter in `[0, 1]`.
    /// Vertices resolve to the edge they start (the last vertex to the last edge).
    pub(crate) fn locate(&self, x: f64) -> (usize, f64) {
        let e = self.edge_count();
        let i = match self.prefix.partition_point(|&p| p <= x) {
            0 => 0,
            k => (k - 1).min(e - 1),
        };
        let len = self.edge_length(i);
        let t = if len > 0.0 { ((x - self.prefix[i]) / len).clamp(0.0, 1.0) } else { 0.0 };
        (i, t)
    }

    /// Writes the point at arc length `x` (assumed in range) into `out`.
    pub(crate) fn eval_into(&self, x: f64, out: &mut [f64]) {
        let (i, t) = self.locate(x);
        let a = self.vertex(i);
        if x == self.prefix[i] {
            out.copy_from_slice(a);
            return;
        }
        let b = self.vertex(i + 1);
        if x == self.prefix[i + 1] {
            out.copy_from_slice(b);
            return;
        }
        for k in 0..self.dim {
            out[k] = a[k] + t * (b[k] - a[k]);
        }
    }

    /// Clamps `x` into `[0, length]` if it is within `1e-9 * length` of it.
    pub(crate) fn clamp_arclength(&self, x: f64) -> Result<f64> {
        let l = self.length();
        let tol = 1e-9 * l;
        if !x.is_finite() || x < -tol || x > l + tol {
            return Err(Error::OutOfRange { value: x, min: 0.0, max: l });
        }
        Ok(x.clamp(0.0, l))
    }

    /// Sub-curve spanning vertices `i..=j`.
    pub fn subcurve(&self, i: usize, j: usize) -> Curve {
        let coords = self.coords[i * self.dim..(j + 1) * self.dim].to_vec();
        let base = self.prefix[i];
        let prefix = self.prefix[i..=j].iter().map(|p| p - base).collect();
        Curve { dim: self.dim, coords, prefix }
    }

    /// Curve through the given vertex indices (in order).
    pub fn select(&self, idx: &[usize]) -> Curve {
        let mut flat = Vec::with_capacity(idx.len() * self.dim);
        for &i in idx {
            flat.extend_from_slice(self.vertex(i));
        }
        Curve::from_flat(self.dim, flat).expect("vertices of a valid curve")
    }

    /// Inserts vertices at the given arc lengths. Positions that coincide with
    /// an existing vertex are ignored. Returns the refined curve and, for every
    /// new edge, the index of the edge of `self` it lies on.
    pub fn refine_at(&self, positions: &[f64]) -> (Curve, Vec<usize>) {
        let mut xs: Vec<f64> = positions
            .iter()
            .copied()
            .filter(|x| x.is_finite() && *x > 0.0 && *x < self.length())
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let mut coords = Vec::with_capacity(self.coords.len() + xs.len() * self.dim);
        let mut prefix = Vec::with_capacity(self.len() + xs.len());
        let mut origin = Vec::with_capacity(self.len() + xs.len());
        let mut k = 0;
        let mut buf = vec![0.0; self.dim];
        for i in 0..self.len() {
            coords.extend_from_slice(self.vertex(i));
            prefix.push(self.prefix[i]);
            if i + 1 == self.len() {
                break;
            }
            origin.push(i);
            while k < xs.len() && xs[k] <= self.prefix[i] {
                k += 1;
            }
            while k < xs.len() && xs[k] < self.prefix[i + 1] {
                let x = xs[k];
                k += 1;
                let t = (x - self.prefix[i]) / self.edge_length(i);
                let (a, b) = (self.vertex(i), self.vertex(i + 1));
                for d in 0..self.dim {
                    buf[d] = a[d] + t * (b[d] - a[d]);
                }
                // A point rounding onto an endpoint would create a zero-length edge.
                if buf == a || buf == b {
                    continue;
                }
                coords.extend_from_slice(&buf);
                prefix.push(x);
                origin.push(i);
            }
        }
        (Curve::with_prefix(self.dim, coords, prefix), origin)
    }

    /// Axis-aligned bounding box diagonal.
    pub fn bbox_diagonal(&self) -> f64 {
        let mut s = 0.0;
        for d in 0..self.dim {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for v in self.coords.chunks_exact(self.dim) {
                lo = lo.min(v[d]);
                hi = hi.max(v[d]);
            }
            s += (hi - lo) * (hi - lo);
        }
        s.sqrt()
    }
}

/// Point at arc length `x` along `c`. Returns vertex `i` exactly at `prefix[i]`.
pub fn point_at_arclength(c: &Curve, x: f64) -> Result<Point> {
    let x = c.clamp_arclength(x)?;
    let mut out = vec![0.0; c.dim()];
    c.eval_into(x, &mut out);
    Ok(Point { coords: out })
}

pub(crate) fn check_pair(a: &Curve, b: &Curve) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    a.require_nondegenerate()?;
    b.require_nondegenerate()
}
