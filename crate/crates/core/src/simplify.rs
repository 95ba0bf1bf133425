//! Curve simplification with Fréchet guarantees.
//!
//! * [`delta_simplify`]: the classical greedy marking scan.
//! * [`spine_morphing`]: a monotone morphing between a curve and the segment
//!   joining its endpoints, within a factor 3 of the optimum. Every vertex is
//!   projected to its nearest point on the segment and the projection is
//!   made non-decreasing by waiting in place.
//! * [`greedy_simplify`]: exponential and binary search for the longest
//!   shortcut whose spine width stays below `δ`.
//! * [`comp_profile`] / [`extract`]: a hierarchical `O(n log n)`
//!   preprocessing from which simplifications for any tolerance are
//!   extracted in time proportional to their size.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{dist_slice, dot, Curve, Segment};
use crate::morphing::Morphing;

/// A simplification given by a subsequence of vertex indices (0-based,
/// containing the first and last vertex) and the curve they induce.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplifiedCurve {
    pub indices: Vec<usize>,
    pub curve: Arc<Curve>,
}

impl SimplifiedCurve {
    /// Induced subcurve. Selected vertices that coincide with their
    /// predecessor are skipped so that indices and vertices stay in step.
    pub fn from_indices(c: &Curve, indices: &[usize]) -> SimplifiedCurve {
        let mut idx: Vec<usize> = Vec::with_capacity(indices.len());
        for &i in indices {
            if let Some(&last) = idx.last() {
                if c.vertex(last) == c.vertex(i) {
                    if i + 1 == c.len() && idx.len() > 1 {
                        idx.pop();
                    } else {
                        continue;
                    }
                }
            }
            idx.push(i);
        }
        if idx.len() == 1 {
            idx.push(c.len() - 1);
        }
        let curve = Arc::new(c.select(&idx));
        SimplifiedCurve { indices: idx, curve }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {delta}")));
    }
    Ok(())
}

/// Greedy scan: mark the first vertex, then every vertex at distance at least
/// `delta` from the last mark; the last vertex is always kept.
pub fn delta_simplify(c: &Curve, delta: f64) -> Result<SimplifiedCurve> {
    check_delta(delta)?;
    let n = c.len();
    let mut idx = vec![0];
    let mut cur = 0;
    for i in 1..n {
        if dist_slice(c.vertex(i), c.vertex(cur)) >= delta {
            idx.push(i);
            cur = i;
        }
    }
    if *idx.last().unwrap() != n - 1 {
        idx.push(n - 1);
    }
    Ok(SimplifiedCurve::from_indices(c, &idx))
}

/// Runs the spine construction for vertices `i..=k` of `c` against the
/// segment `s0 -> s1`, calling `emit(x, y, leash)` for every morphing vertex
/// (`x` relative to vertex `i`, `y` an arc length on the segment).
fn spine_walk(c: &Curve, i: usize, k: usize, s0: &[f64], s1: &[f64], mut emit: impl FnMut(f64, f64, f64)) {
    let dim = c.dim();
    let len = dist_slice(s0, s1);
    let dir: Vec<f64> = if len > 0.0 { s0.iter().zip(s1).map(|(a, b)| (b - a) / len).collect() } else { vec![0.0; dim] };
    // The segment endpoints project exactly onto 0 and len.
    let lambda = |v: &[f64]| -> f64 {
        if len == 0.0 || v == s0 {
            return 0.0;
        }
        if v == s1 {
            return len;
        }
        let mut acc = 0.0;
        for d in 0..dim {
            acc += (v[d] - s0[d]) * dir[d];
        }
        acc
    };
    let mut pc = vec![0.0; dim];
    let leash = |v0: &[f64], v1: &[f64], tau: f64, y: f64, pc: &mut [f64]| -> f64 {
        let mut acc = 0.0;
        for d in 0..dim {
            pc[d] = v0[d] + tau * (v1[d] - v0[d]);
            let ps = if y >= len { s1[d] } else { s0[d] + y * dir[d] };
            acc += (pc[d] - ps) * (pc[d] - ps);
        }
        acc.sqrt()
    };
    let base = c.prefix(i);
    let mut lam0 = lambda(c.vertex(i));
    let mut m = lam0.clamp(0.0, len);
    let v = c.vertex(i);
    emit(0.0, m, leash(v, v, 0.0, m, &mut pc));
    for e in i..k {
        let (v0, v1) = (c.vertex(e), c.vertex(e + 1));
        let (x0, x1) = (c.prefix(e) - base, c.prefix(e + 1) - base);
        let lam1 = lambda(v1);
        if lam1 > lam0 && m < len {
            let slope = lam1 - lam0;
            let tm = (m - lam0) / slope;
            if tm > 0.0 && tm < 1.0 {
                emit(x0 + tm * (x1 - x0), m, leash(v0, v1, tm, m, &mut pc));
            }
            let tl = (len - lam0) / slope;
            if tl > 0.0 && tl < 1.0 {
                emit(x0 + tl * (x1 - x0), len, leash(v0, v1, tl, len, &mut pc));
            }
            m = m.max(lam1.min(len));
        }
        emit(x1, m, leash(v0, v1, 1.0, m, &mut pc));
        lam0 = lam1;
    }
}

/// Spine width of vertices `i..=k` of `c` (segment `p_i p_k`).
pub(crate) fn spine_width(c: &Curve, i: usize, k: usize) -> f64 {
    let mut w = 0.0f64;
    spine_walk(c, i, k, c.vertex(i), c.vertex(k), |_, _, l| w = w.max(l));
    w
}

/// Monotone morphing between `c` and the segment `s`, with its width.
///
/// Requires the nearest point of the first vertex of `c` on `s` to be
/// `s.start` and that of the last vertex to be `s.end`.
pub fn spine_morphing(c: &Curve, s: &Segment) -> Result<(Morphing, f64)> {
    if c.dim() != s.start.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), found: s.start.dim() });
    }
    let (s0, s1) = (s.start.coords(), s.end.coords());
    let len = s.length();
    if len > 0.0 {
        let d: Vec<f64> = s0.iter().zip(s1).map(|(a, b)| b - a).collect();
        let t = |v: &[f64]| {
            let w: Vec<f64> = v.iter().zip(s0).map(|(a, b)| a - b).collect();
            (dot(&w, &d) / (len * len)).clamp(0.0, 1.0)
        };
        let (tf, tl) = (t(c.vertex(0)), t(c.vertex(c.len() - 1)));
        if tf > 1e-9 || tl < 1.0 - 1e-9 {
            return Err(Error::Precondition(
                "curve endpoints must project onto the segment endpoints".into(),
            ));
        }
    }
    let mut pts = Vec::new();
    let mut w = 0.0f64;
    spine_walk(c, 0, c.len() - 1, s0, s1, |x, y, l| {
        pts.push((x, y));
        w = w.max(l);
    });
    pts.dedup();
    let seg = Arc::new(Curve::new(&[s.start.clone(), s.end.clone()])?);
    Ok((Morphing::new(Arc::new(c.clone()), seg, pts)?, w))
}

/// Morphing between `c` and a simplification of it, built from the spine
/// morphing of each simplified edge against the portion of `c` it spans.
/// Returns the morphing, its width and the width of every simplified edge.
pub fn greedy_morphing(c: &Arc<Curve>, sub: &SimplifiedCurve) -> Result<(Morphing, f64, Vec<f64>)> {
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(c.len() + sub.len());
    let mut widths = Vec::with_capacity(sub.len().saturating_sub(1));
    for (e, w) in sub.indices.windows(2).enumerate() {
        let (i, k) = (w[0], w[1]);
        let (bx, by) = (c.prefix(i), sub.curve.prefix(e));
        let (ex, ey) = (c.prefix(k), sub.curve.prefix(e + 1));
        let mut we = 0.0f64;
        spine_walk(c, i, k, c.vertex(i), c.vertex(k), |x, y, l| {
            // Rounding must not carry a point past the edge boundaries.
            let (px, py) = pts.last().copied().unwrap_or((0.0, 0.0));
            pts.push(((bx + x).min(ex).max(px), (by + y).min(ey).max(py)));
            we = we.max(l);
        });
        widths.push(we);
    }
    pts.dedup();
    let width = widths.iter().copied().fold(0.0, f64::max);
    Ok((Morphing::new(c.clone(), sub.curve.clone(), pts)?, width, widths))
}

/// Per-vertex error array of the hierarchical simplification.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplificationProfile {
    pub values: Vec<f64>,
    pub source: Arc<Curve>,
}

impl SimplificationProfile {
    /// Serializes the values: length as `u64`, then the doubles, little-endian.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 8 * self.values.len());
        out.extend_from_slice(&(self.values.len() as u64).to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    /// Inverse of [`to_bytes`](Self::to_bytes) for the given source curve.
    pub fn from_bytes(bytes: &[u8], source: Arc<Curve>) -> Result<Self> {
        let bad = || Error::InvalidParameter("malformed profile bytes".into());
        let n = u64::from_le_bytes(bytes.get(..8).ok_or_else(bad)?.try_into().unwrap()) as usize;
        if bytes.len() != 8 + 8 * n || n != source.len() {
            return Err(bad());
        }
        let values = bytes[8..]
            .chunks_exact(8)
            .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
            .collect();
        Ok(SimplificationProfile { values, source })
    }
}

const PAR_THRESHOLD: usize = 1 << 12;

fn profile_rec(c: &Curve, i: usize, j: usize, out: &mut [f64]) {
    // `out` covers vertices i..=j.
    if j - i < 2 {
        return;
    }
    let k = (i + j) / 2;
    out[k - i] = spine_width(c, i, k).max(spine_width(c, k, j));
    let (left, right) = out.split_at_mut(k - i);
    if j - i >= PAR_THRESHOLD {
        rayon::join(|| profile_rec(c, i, k, left), || profile_rec(c, k, j, right));
    } else {
        profile_rec(c, i, k, left);
        profile_rec(c, k, j, right);
    }
}

/// Hierarchical profile: `A[k]` for each recursive midpoint `k` of `[i, j]` is
/// the larger spine width of the two halves `c[i..=k]` and `c[k..=j]`.
pub fn comp_profile(c: &Arc<Curve>) -> SimplificationProfile {
    let n = c.len();
    let mut values = vec![0.0; n];
    profile_rec(c, 0, n - 1, &mut values);
    SimplificationProfile { values, source: c.clone() }
}

fn extract_rec(a: &[f64], i: usize, j: usize, w: f64, out: &mut Vec<usize>) {
    if j - i < 2 {
        return;
    }
    let k = (i + j) / 2;
    if a[k] > w {
        extract_rec(a, i, k, w, out);
        out.push(k);
        extract_rec(a, k, j, w, out);
    } else {
        out.push(k);
    }
}

/// Simplification with Fréchet distance at most `w`: the midpoint of every
/// visited interval is kept, and an interval is split further iff its
/// profile value exceeds `w`.
pub fn extract(profile: &SimplificationProfile, w: f64) -> Result<SimplifiedCurve> {
    if !(w >= 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be non-negative, got {w}")));
    }
    let n = profile.values.len();
    let mut idx = vec![0];
    extract_rec(&profile.values, 0, n - 1, w, &mut idx);
    idx.push(n - 1);
    Ok(SimplifiedCurve::from_indices(&profile.source, &idx))
}

/// Greedy simplification: from the current vertex, find the furthest vertex
/// whose shortcut has spine width at most `delta` by exponential then binary
/// search, and jump there.
pub fn greedy_simplify(c: &Curve, delta: f64) -> Result<SimplifiedCurve> {
    check_delta(delta)?;
    let n = c.len();
    let mut idx = vec![0];
    let mut j = 0;
    while j < n - 1 {
        let mut good = j + 1;
        let mut bad = None;
        let mut step = 2;
        while bad.is_none() && good < n - 1 {
            let k = (j + step).min(n - 1);
            if spine_width(c, j, k) <= delta {
                good = k;
                step *= 2;
            } else {
                bad = Some(k);
            }
        }
        if let Some(mut bad) = bad {
            while bad - good > 1 {
                let mid = (good + bad) / 2;
                if spine_width(c, j, mid) <= delta {
                    good = mid;
                } else {
                    bad = mid;
                }
            }
        }
        idx.push(good);
        j = good;
    }
    Ok(SimplifiedCurve::from_indices(c, &idx))
}

/// Extraction at `delta / 10` followed by greedy simplification at `0.9 delta`.
pub fn combined_simplify(profile: &SimplificationProfile, delta: f64) -> Result<SimplifiedCurve> {
    check_delta(delta)?;
    let coarse = extract(profile, delta / 10.0)?;
    let fine = greedy_simplify(&coarse.curve, 0.9 * delta)?;
    let idx: Vec<usize> = fine.indices.iter().map(|&k| coarse.indices[k]).collect();
    Ok(SimplifiedCurve::from_indices(&profile.source, &idx))
}
