//! Test oracles and instance generators. Curves are plain `Vec<Vec<f64>>`
//! so that this crate does not depend on the library under test.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub type Pts = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A DAG on nodes `0..n` (edges go from lower to higher id) with distinct
/// edge weights.
#[derive(Debug, Clone)]
pub struct Dag {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl Dag {
    pub fn random<R: Rng>(rng: &mut R, n: usize, p: f64) -> Dag {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v, 0.0));
                }
            }
        }
        let mut w: Vec<usize> = (1..=edges.len()).collect();
        w.shuffle(rng);
        for (e, w) in edges.iter_mut().zip(w) {
            e.2 = w as f64 + rng.gen::<f64>() * 0.5;
        }
        Dag { n, edges }
    }

    pub fn out(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.edges.iter().filter(move |e| e.0 == u).map(|e| (e.1, e.2))
    }
}

/// All simple paths from `s` to `t` as node lists.
pub fn all_paths(succ: &dyn Fn(usize) -> Vec<usize>, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(succ: &dyn Fn(usize) -> Vec<usize>, u: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if u == t {
            out.push(cur.clone());
            return;
        }
        for v in succ(u) {
            if !cur.contains(&v) {
                cur.push(v);
                go(succ, v, t, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(succ, s, t, &mut vec![s], &mut out);
    out
}

/// The recursively bottleneck-optimal path from `s` to `t` by exhaustive
/// enumeration: find the bottleneck edge `u -> v` over all paths, then
/// recurse on `s -> u` and `v -> t`. Returns the path and its bottleneck.
pub fn retractable_oracle(g: &Dag, s: usize, t: usize) -> Option<(Vec<usize>, f64)> {
    if s == t {
        return Some((vec![s], f64::NEG_INFINITY));
    }
    let w = |u: usize, v: usize| g.edges.iter().find(|e| e.0 == u && e.1 == v).unwrap().2;
    let succ = |u: usize| g.out(u).map(|x| x.0).collect::<Vec<_>>();
    let paths = all_paths(&succ, s, t);
    let mut best: Option<(f64, usize, usize)> = None;
    for p in &paths {
        let (b, u, v) = p
            .windows(2)
            .map(|e| (w(e[0], e[1]), e[0], e[1]))
            .fold((f64::NEG_INFINITY, 0, 0), |acc, x| if x.0 > acc.0 { x } else { acc });
        if best.map_or(true, |bb| b < bb.0) {
            best = Some((b, u, v));
        }
    }
    let (b, u, v) = best?;
    let (mut left, _) = retractable_oracle(g, s, u)?;
    let (right, _) = retractable_oracle(g, v, t)?;
    left.extend(right);
    Some((left, b))
}

/// Node-weighted version on an arbitrary DAG given by `succ`: the bottleneck
/// is the heaviest counted node, the endpoints counted as flagged. The
/// bottleneck node splits the problem into two halves that each exclude it.
pub fn node_weighted_oracle(
    succ: &dyn Fn(usize) -> Vec<usize>,
    h: &dyn Fn(usize) -> f64,
    s: usize,
    t: usize,
) -> Option<(Vec<usize>, f64)> {
    fn rec(
        succ: &dyn Fn(usize) -> Vec<usize>,
        h: &dyn Fn(usize) -> f64,
        s: usize,
        t: usize,
        with_s: bool,
        with_t: bool,
    ) -> Option<Vec<usize>> {
        if s == t {
            return Some(vec![s]);
        }
        let mut best: Option<(f64, Option<usize>, Vec<usize>)> = None;
        for p in all_paths(succ, s, t) {
            let mut b = (f64::NEG_INFINITY, None);
            for (k, &x) in p.iter().enumerate() {
                let counted = (k > 0 || with_s) && (k + 1 < p.len() || with_t);
                if counted && h(x) > b.0 {
                    b = (h(x), Some(x));
                }
            }
            if best.as_ref().map_or(true, |bb| b.0 < bb.0) {
                best = Some((b.0, b.1, p));
            }
        }
        let (_, x, p) = best?;
        let Some(x) = x else { return Some(p) };
        let mut left = rec(succ, h, s, x, with_s, false)?;
        let right = rec(succ, h, x, t, false, with_t)?;
        left.extend_from_slice(&right[1..]);
        Some(left)
    }
    let p = rec(succ, h, s, t, true, true)?;
    let v = p.iter().map(|&x| h(x)).fold(f64::NEG_INFINITY, f64::max);
    Some((p, v))
}

/// Successors in an `n x m` monotone grid (right and up moves), nodes
/// numbered `i * m + j`.
pub fn grid_succ(n: usize, m: usize) -> impl Fn(usize) -> Vec<usize> {
    move |u| {
        let (i, j) = (u / m, u % m);
        let mut v = Vec::new();
        if i + 1 < n {
            v.push(u + m);
        }
        if j + 1 < m {
            v.push(u + 1);
        }
        v
    }
}

fn d(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Every edge subdivided into `k` pieces.
pub fn densify(c: &[Vec<f64>], k: usize) -> Pts {
    let mut out = Vec::with_capacity((c.len() - 1) * k + 1);
    for w in c.windows(2) {
        for s in 0..k {
            let t = s as f64 / k as f64;
            out.push(w[0].iter().zip(&w[1]).map(|(a, b)| a + t * (b - a)).collect());
        }
    }
    out.push(c[c.len() - 1].clone());
    out
}

/// Classic discrete Fréchet distance (simultaneous moves allowed).
pub fn discrete_frechet(p: &[Vec<f64>], q: &[Vec<f64>]) -> f64 {
    let m = q.len();
    let mut prev = vec![f64::INFINITY; m];
    let mut cur = vec![0.0; m];
    for (i, pi) in p.iter().enumerate() {
        for j in 0..m {
            let c = d(pi, &q[j]);
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let mut b = prev[j];
                if j > 0 {
                    b = b.min(cur[j - 1]).min(prev[j - 1]);
                }
                b
            };
            cur[j] = c.max(best);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m - 1]
}

/// Approximates the continuous Fréchet distance from above by the discrete
/// distance of the densely sampled curves.
pub fn dense_frechet(a: &[Vec<f64>], b: &[Vec<f64>], k: usize) -> f64 {
    discrete_frechet(&densify(a, k), &densify(b, k))
}

/// Adaptive Simpson quadrature. The tolerance is floored at rounding level
/// of the first estimate so that recursion always terminates.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, floor: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        if depth == 0 || diff.abs() <= 15.0 * tol.max(floor) {
            return left + right + diff / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, 0.5 * floor, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, 0.5 * floor, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let floor = 1e-15 * whole.abs();
    rec(f, a, b, fa, fm, fb, whole, tol, floor, 40)
}

/// `n` points uniform in `[0, scale]^dim`.
pub fn random_curve<R: Rng>(rng: &mut R, n: usize, dim: usize, scale: f64) -> Pts {
    (0..n).map(|_| (0..dim).map(|_| rng.gen::<f64>() * scale).collect()).collect()
}

/// Planar random walk with steps uniform in `[-step, step]^2`.
pub fn random_walk<R: Rng>(rng: &mut R, n: usize, step: f64) -> Pts {
    let mut p = vec![0.0, 0.0];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(p.clone());
        for x in p.iter_mut() {
            *x += rng.gen_range(-step..step);
        }
    }
    out
}

/// Every coordinate moved by uniform noise in `[-eps, eps]`.
pub fn perturb<R: Rng>(rng: &mut R, c: &[Vec<f64>], eps: f64) -> Pts {
    c.iter().map(|p| p.iter().map(|x| x + rng.gen_range(-eps..eps)).collect()).collect()
}

/// A pair of roughly parallel curves, each with a few back-and-forth
/// zigzags at different places, so that the optimal morphing has one
/// agent wait while the other traverses a zigzag.
pub fn zigzag_pair(seed: u64) -> (Pts, Pts) {
    let mut r = rng(seed);
    let gap = r.gen_range(0.5..1.5);
    let make = |y0: f64, r: &mut ChaCha8Rng| {
        let mut pts = vec![vec![0.0, y0]];
        let mut x = 0.0;
        for _ in 0..r.gen_range(2..5) {
            x += r.gen_range(1.0..3.0);
            pts.push(vec![x, y0 + r.gen_range(-0.1..0.1)]);
            if r.gen_bool(0.6) {
                let back = r.gen_range(0.5..2.0);
                let up = r.gen_range(-0.3..0.3);
                pts.push(vec![x - back, y0 + up]);
                pts.push(vec![x + r.gen_range(0.2..1.0), y0 + up + r.gen_range(-0.1..0.1)]);
                x = pts.last().unwrap()[0];
            }
        }
        x += r.gen_range(1.0..2.0);
        pts.push(vec![x, y0]);
        pts
    };
    let a = make(0.0, &mut r);
    let b = make(gap, &mut r);
    (a, b)
}

/// The one-dimensional curve `0, 1, δ, 1-δ, 2δ, 1-2δ, …, 1/2-δ, 1/2+δ, 1/2`
/// with `δ = 1/(2m)`, and its subsequence without the second and third
/// vertices. Returned as 1-dimensional points.
pub fn spine_counterexample(m: usize) -> (Pts, Pts) {
    let delta = 1.0 / (2.0 * m as f64);
    let mut a = vec![0.0, 1.0];
    for k in 1..m {
        a.push(k as f64 * delta);
        a.push(1.0 - k as f64 * delta);
    }
    a.push(0.5);
    let mut sub = vec![a[0]];
    sub.extend_from_slice(&a[3..]);
    let wrap = |v: Vec<f64>| v.into_iter().map(|x| vec![x]).collect();
    (wrap(a), wrap(sub))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_oracle() {
        let g = Dag { n: 4, edges: vec![(0, 1, 5.0), (1, 3, 1.0), (0, 2, 3.0), (2, 3, 4.0)] };
        assert_eq!(retractable_oracle(&g, 0, 3), Some((vec![0, 2, 3], 4.0)));
    }

    #[test]
    fn simpson_polynomial() {
        let v = simpson(&|x: f64| x * x, 0.0, 3.0, 1e-12);
        assert!((v - 9.0).abs() < 1e-10);
    }

    #[test]
    fn dense_parallel() {
        let a = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
        let b = vec![vec![0.0, 1.0], vec![1.0, 1.0]];
        assert!((dense_frechet(&a, &b, 10) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn counterexample_shape() {
        let (a, s) = spine_counterexample(8);
        assert_eq!(a.len(), 2 * 8 + 1);
        assert_eq!(s.len(), a.len() - 2);
        assert_eq!(a[a.len() - 2][0], 0.5 + 1.0 / 16.0);
    }
}
