//! Discrete Fréchet distance: the classical dynamic program and the
//! retractable variant computed by a bottleneck search over the grid graph.
//!
//! Both movers advance one step at a time; diagonal moves are not allowed.
//! Steps are 0-based index pairs running from `(0, 0)` to `(n-1, m-1)`.

use crate::error::{Error, Result};
use crate::geometry::{dist_slice, Point};
use crate::retract::{retractable_path_with_node_weights, NodeWeightedGraph};

/// A monotone grid path and its width.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMorphing {
    pub steps: Vec<(usize, usize)>,
    pub width: f64,
}

fn flatten(ps: &[Point]) -> Result<(usize, Vec<f64>)> {
    let first = ps.first().ok_or(Error::EmptyCurve)?;
    let d = first.dim();
    let mut flat = Vec::with_capacity(ps.len() * d);
    for p in ps {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
        flat.extend_from_slice(p.coords());
    }
    Ok((d, flat))
}

fn prepare(p: &[Point], q: &[Point]) -> Result<(usize, Vec<f64>, Vec<f64>)> {
    let (dp, fp) = flatten(p)?;
    let (dq, fq) = flatten(q)?;
    if dp != dq {
        return Err(Error::DimensionMismatch { expected: dp, found: dq });
    }
    Ok((dp, fp, fq))
}

/// Discrete Fréchet distance by the `O(nm)` dynamic program.
pub fn discrete_frechet_dp(p: &[Point], q: &[Point]) -> Result<(f64, DiscreteMorphing)> {
    let (d, fp, fq) = prepare(p, q)?;
    let (n, m) = (p.len(), q.len());
    let h = |i: usize, j: usize| dist_slice(&fp[i * d..(i + 1) * d], &fq[j * d..(j + 1) * d]);
    let mut dp = vec![0.0; n * m];
    for i in 0..n {
        for j in 0..m {
            let best = match (i, j) {
                (0, 0) => f64::NEG_INFINITY,
                (0, _) => dp[j - 1],
                (_, 0) => dp[(i - 1) * m],
                _ => dp[(i - 1) * m + j].min(dp[i * m + j - 1]),
            };
            dp[i * m + j] = best.max(h(i, j));
        }
    }
    let width = dp[n * m - 1];
    let mut steps = vec![(n - 1, m - 1)];
    let (mut i, mut j) = (n - 1, m - 1);
    while (i, j) != (0, 0) {
        if i == 0 {
            j -= 1;
        } else if j == 0 {
            i -= 1;
        } else if dp[(i - 1) * m + j] <= dp[i * m + j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
        steps.push((i, j));
    }
    steps.reverse();
    Ok((width, DiscreteMorphing { steps, width }))
}

struct Grid<'a> {
    d: usize,
    p: &'a [f64],
    q: &'a [f64],
    n: u32,
    m: u32,
}

impl NodeWeightedGraph for Grid<'_> {
    type Node = (u32, u32);

    fn start(&self) -> (u32, u32) {
        (0, 0)
    }

    fn is_target(&self, v: (u32, u32)) -> bool {
        v == (self.n - 1, self.m - 1)
    }

    fn successors(&self, (i, j): (u32, u32), out: &mut Vec<(u32, u32)>) {
        if i + 1 < self.n {
            out.push((i + 1, j));
        }
        if j + 1 < self.m {
            out.push((i, j + 1));
        }
    }

    fn weight(&self, (i, j): (u32, u32)) -> f64 {
        let (i, j, d) = (i as usize, j as usize, self.d);
        dist_slice(&self.p[i * d..(i + 1) * d], &self.q[j * d..(j + 1) * d])
    }
}

/// Retractable discrete Fréchet morphing. Returns `(distance, morphing, explored)`.
pub fn retractable_discrete_frechet(
    p: &[Point],
    q: &[Point],
) -> Result<(f64, DiscreteMorphing, usize)> {
    let (d, fp, fq) = prepare(p, q)?;
    let g = Grid { d, p: &fp, q: &fq, n: p.len() as u32, m: q.len() as u32 };
    let r = retractable_path_with_node_weights(&g)?;
    let steps = r.path.iter().map(|&(i, j)| (i as usize, j as usize)).collect();
    Ok((r.value, DiscreteMorphing { steps, width: r.value }, r.explored))
}
