//! Exact and approximate Fréchet distance with certificates.
//!
//! The VE-Fréchet morphing `σ` gives a lower bound, and its direct
//! monotonization `σ⁺` a valid morphing and thus an upper bound. When they
//! differ, the curves are refined inside the edges where `σ` moves backward
//! and the VE morphing is recomputed; refinement never changes the Fréchet
//! distance but raises the VE lower bound.
//!
//! Larger inputs go through simplification: the exact machinery runs on
//! simplified curves and the morphings between each curve and its
//! simplification are composed around the result.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{check_pair, dist_slice, Curve};
use crate::morphing::{combine, Morphing};
use crate::simplify::{
    comp_profile, combined_simplify, greedy_morphing, SimplificationProfile, SimplifiedCurve,
};
use crate::ve::{ve_search, Offsets};

/// How a certificate ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CertificateStatus {
    /// Bounds agree within the relative tolerance.
    Exact,
    /// `upper / lower` is at most the given ratio.
    Approx(f64),
    /// The round cap was hit; the bracket is still valid.
    IterationCapped,
}

/// A bracket `[lower, upper]` on the Fréchet distance with a monotone
/// morphing of width `upper`.
#[derive(Debug, Clone)]
pub struct DistanceCertificate {
    pub lower: f64,
    pub upper: f64,
    pub morphing: Morphing,
    pub rounds: usize,
    pub status: CertificateStatus,
    /// Total number of VE nodes popped over all searches.
    pub explored: usize,
}

impl DistanceCertificate {
    /// The certified value (the upper end of the bracket).
    pub fn value(&self) -> f64 {
        self.upper
    }

    pub fn is_exact(&self) -> bool {
        self.status == CertificateStatus::Exact
    }
}

/// Where refinement vertices are inserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refinement {
    /// Midpoint of every backward portion.
    Bisection,
    /// Bisector intersections of the vertex pairs around each backward portion.
    Bisector,
    /// Both of the above.
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactOptions {
    pub max_rounds: usize,
    pub rel_tol: f64,
    pub refinement: Refinement,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { max_rounds: 100, rel_tol: 1e-10, refinement: Refinement::Hybrid }
    }
}

fn closed(lower: f64, upper: f64, rel_tol: f64) -> bool {
    upper - lower <= rel_tol * upper.abs()
}

/// Midpoints of the backward portions of `m` on each curve.
fn bisection_positions(m: &Morphing) -> (Vec<f64>, Vec<f64>) {
    let (on_a, on_b) = m.backtrack_intervals();
    let mid = |v: Vec<(f64, f64)>| v.into_iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect();
    (mid(on_a), mid(on_b))
}

const MAX_BISECTOR_VERTICES: usize = 24;

// Points of edge `e` of `c` equidistant from two vertices of `other`.
fn bisector_points(c: &Curve, e: usize, other: &Curve, verts: &[usize], out: &mut Vec<f64>) {
    let (a, b) = (c.vertex(e), c.vertex(e + 1));
    let len = c.edge_length(e);
    for (s, &u) in verts.iter().enumerate() {
        for &v in &verts[s + 1..] {
            let (pu, pv) = (other.vertex(u), other.vertex(v));
            // |a + t(b-a) - u|² = |a + t(b-a) - v|²  is linear in t.
            let mut num = 0.0;
            let mut den = 0.0;
            for d in 0..c.dim() {
                let w = pv[d] - pu[d];
                num += (pv[d] * pv[d] - pu[d] * pu[d]) - 2.0 * a[d] * w;
                den += 2.0 * (b[d] - a[d]) * w;
            }
            if den != 0.0 {
                let t = num / den;
                if t > 0.0 && t < 1.0 {
                    out.push(c.prefix(e) + t * len);
                }
            }
        }
    }
}

/// Bisector insertions for every backward portion of `m`: for a run where
/// the coordinate on one curve decreases, take the vertices of the other
/// curve passed while the morphing is non-monotone on that edge, and insert
/// the points of the edge equidistant from every pair of them.
fn bisector_positions(a: &Curve, b: &Curve, m: &Morphing) -> (Vec<f64>, Vec<f64>) {
    let pts = m.points();
    let mut out = (Vec::new(), Vec::new());
    for axis in 0..2 {
        let (c, other) = if axis == 0 { (a, b) } else { (b, a) };
        let own = |k: usize| if axis == 0 { pts[k].0 } else { pts[k].1 };
        let oth = |k: usize| if axis == 0 { pts[k].1 } else { pts[k].0 };
        for (k0, k1) in m.decreasing_index_runs(axis) {
            let peak = own(k0);
            let mut k2 = k1;
            while k2 + 1 < pts.len() && own(k2) < peak {
                k2 += 1;
            }
            let lo_k = k0.saturating_sub(1);
            let (olo, ohi) = (oth(lo_k), oth(k2));
            let pre = other.prefix_lengths();
            let mut first = pre.partition_point(|&v| v < olo).saturating_sub(1);
            let mut last = pre.partition_point(|&v| v <= ohi).min(pre.len() - 1);
            while last - first + 1 > MAX_BISECTOR_VERTICES {
                first += 1;
                if last - first + 1 > MAX_BISECTOR_VERTICES {
                    last -= 1;
                }
            }
            let verts: Vec<usize> = (first..=last).collect();
            let (e, _) = c.locate(0.5 * (own(k1) + peak));
            let target = if axis == 0 { &mut out.0 } else { &mut out.1 };
            bisector_points(c, e, other, &verts, target);
        }
    }
    out
}

/// Inserts, on every edge carrying a non-monotone portion of `m`, the points
/// equidistant from pairs of vertices of the other curve involved there.
pub fn bisector_refine(a: &Curve, b: &Curve, m: &Morphing) -> (Curve, Curve) {
    let (pa, pb) = bisector_positions(a, b, m);
    (a.refine_at(&pa).0, b.refine_at(&pb).0)
}

struct LoopOutcome {
    lower: f64,
    upper: f64,
    morphing: Morphing,
    rounds: usize,
    converged: bool,
    explored: usize,
}

fn expand(w: &Option<Vec<f64>>, origin: &[usize]) -> Option<Vec<f64>> {
    w.as_ref().map(|w| origin.iter().map(|&e| w[e]).collect())
}

// Width of a monotone morphing under the offset elevation: on each segment
// the cell offsets apply, and convexity puts the maximum at an endpoint.
fn offset_width(m: &Morphing, wa: &[f64], wb: &[f64]) -> f64 {
    let m = m.split_at_grid();
    let leash = m.leashes();
    let (a, b) = (m.curve_a(), m.curve_b());
    let pts = m.points();
    let mut best = f64::NEG_INFINITY;
    for k in 0..pts.len() - 1 {
        let (i, _) = a.locate(0.5 * (pts[k].0 + pts[k + 1].0));
        let (j, _) = b.locate(0.5 * (pts[k].1 + pts[k + 1].1));
        best = best.max(leash[k].max(leash[k + 1]) - wa[i] - wb[j]);
    }
    best
}

/// The refine-until-monotone loop shared by the exact distance and the
/// offset lower bound.
fn refine_loop(
    a0: &Arc<Curve>,
    b0: &Arc<Curve>,
    widths: Option<(Vec<f64>, Vec<f64>)>,
    opts: &ExactOptions,
    cutoff: Option<f64>,
) -> Result<Option<LoopOutcome>> {
    let (mut a, mut b) = (a0.clone(), b0.clone());
    let (mut wa, mut wb) = match widths {
        Some((x, y)) => (Some(x), Some(y)),
        None => (None, None),
    };
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::INFINITY;
    let mut best: Option<Morphing> = None;
    let mut explored = 0;
    let mut round = 0;
    loop {
        let offsets = match (&wa, &wb) {
            (Some(x), Some(y)) => Some(Offsets { a: x, b: y }),
            _ => None,
        };
        let Some(r) = ve_search(&a, &b, offsets, cutoff)? else {
            return Ok(None);
        };
        explored += r.explored;
        let mono = r.morphing.monotonize();
        let up = match (&wa, &wb) {
            (Some(x), Some(y)) => offset_width(&mono, x, y),
            _ => match mono.width() {
                Ok(w) => w,
                Err(_) => mono.split_at_grid().width()?,
            },
        };
        // Mathematically up >= distance; guard against rounding.
        let up = up.max(r.distance);
        lower = lower.max(r.distance);
        if up < upper || best.is_none() {
            upper = up;
            best = Some(mono);
        }
        if closed(lower, upper, opts.rel_tol) || round >= opts.max_rounds {
            break;
        }
        let (mut pa, mut pb) = (Vec::new(), Vec::new());
        if matches!(opts.refinement, Refinement::Bisection | Refinement::Hybrid) {
            let (x, y) = bisection_positions(&r.morphing);
            pa.extend(x);
            pb.extend(y);
        }
        if matches!(opts.refinement, Refinement::Bisector | Refinement::Hybrid) {
            let (x, y) = bisector_positions(&a, &b, &r.morphing);
            pa.extend(x);
            pb.extend(y);
        }
        let (na, oa) = a.refine_at(&pa);
        let (nb, ob) = b.refine_at(&pb);
        if na.len() == a.len() && nb.len() == b.len() {
            // Nothing left to insert (backward portions below resolution).
            break;
        }
        wa = expand(&wa, &oa);
        wb = expand(&wb, &ob);
        a = Arc::new(na);
        b = Arc::new(nb);
        round += 1;
    }
    let morphing = best.unwrap().with_curves(a0.clone(), b0.clone())?;
    Ok(Some(LoopOutcome {
        lower,
        upper,
        morphing,
        rounds: round,
        converged: closed(lower, upper, opts.rel_tol),
        explored,
    }))
}

fn exact_arc(a: &Arc<Curve>, b: &Arc<Curve>, opts: &ExactOptions) -> Result<DistanceCertificate> {
    check_pair(a, b)?;
    let o = refine_loop(a, b, None, opts, None)?.expect("no cutoff");
    Ok(DistanceCertificate {
        lower: o.lower,
        upper: o.upper,
        morphing: o.morphing,
        rounds: o.rounds,
        status: if o.converged { CertificateStatus::Exact } else { CertificateStatus::IterationCapped },
        explored: o.explored,
    })
}

/// Fréchet distance by VE morphings and refinement until the VE lower bound
/// meets the width of the monotonized morphing.
pub fn frechet_exact(a: &Curve, b: &Curve, opts: &ExactOptions) -> Result<DistanceCertificate> {
    exact_arc(&Arc::new(a.clone()), &Arc::new(b.clone()), opts)
}

/// Lower bound on the Fréchet distance between two curves from their
/// simplifications `abar`, `bbar`, where edge `e` of a simplification is
/// within Fréchet distance `wa[e]` (resp. `wb[e]`) of the part it replaces.
/// Clamped at 0.
pub fn frechet_lower_bound_d(
    abar: &Curve,
    bbar: &Curve,
    wa: &[f64],
    wb: &[f64],
    opts: &ExactOptions,
) -> Result<f64> {
    if wa.len() != abar.edge_count() || wb.len() != bbar.edge_count() {
        return Err(Error::InvalidParameter("one width per simplified edge expected".into()));
    }
    if wa.iter().chain(wb).any(|w| !(*w >= 0.0) || !w.is_finite()) {
        return Err(Error::InvalidParameter("edge widths must be finite and non-negative".into()));
    }
    check_pair(abar, bbar)?;
    let (a, b) = (Arc::new(abar.clone()), Arc::new(bbar.clone()));
    let o = refine_loop(&a, &b, Some((wa.to_vec(), wb.to_vec())), opts, None)?.expect("no cutoff");
    Ok(o.lower.max(0.0))
}

fn endpoint_bound(a: &Curve, b: &Curve) -> f64 {
    let (n, m) = (a.len(), b.len());
    dist_slice(a.vertex(0), b.vertex(0)).max(dist_slice(a.vertex(n - 1), b.vertex(m - 1)))
}

/// Upper bound on any leash: the diagonal of the joint bounding box.
fn diameter_bound(a: &Curve, b: &Curve) -> f64 {
    let d = a.dim();
    let mut s = 0.0;
    for k in 0..d {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for c in [a, b] {
            for v in c.coords().chunks_exact(d) {
                lo = lo.min(v[k]);
                hi = hi.max(v[k]);
            }
        }
        s += (hi - lo) * (hi - lo);
    }
    s.sqrt()
}

/// Running best bracket.
struct Bracket {
    lower: f64,
    upper: f64,
    morphing: Option<Morphing>,
    rounds: usize,
    explored: usize,
}

impl Bracket {
    fn new(lower: f64) -> Self {
        Bracket { lower, upper: f64::INFINITY, morphing: None, rounds: 0, explored: 0 }
    }

    fn offer(&mut self, lower: f64, upper: f64, m: Morphing) {
        self.lower = self.lower.max(lower);
        if upper < self.upper || self.morphing.is_none() {
            self.upper = upper;
            self.morphing = Some(m);
        }
    }

    fn certificate(self, status: CertificateStatus) -> DistanceCertificate {
        DistanceCertificate {
            lower: self.lower.min(self.upper),
            upper: self.upper,
            morphing: self.morphing.expect("bracket has a morphing"),
            rounds: self.rounds,
            status,
            explored: self.explored,
        }
    }
}

/// Composes `A -> Ā -> B̄ -> B` and returns the composite with its width.
fn compose_through(
    a: &Arc<Curve>,
    sa: &SimplifiedCurve,
    b: &Arc<Curve>,
    sb: &SimplifiedCurve,
    middle: &Morphing,
) -> Result<(Morphing, f64, f64, f64, Vec<f64>, Vec<f64>)> {
    let (m1, w1, wa) = greedy_morphing(a, sa)?;
    let (m3, w3, wb) = greedy_morphing(b, sb)?;
    let m = combine(&combine(&m1, middle)?, &m3.transpose())?.split_at_grid();
    let w = m.width()?;
    Ok((m, w, w1, w3, wa, wb))
}

fn same_curve(a: &Curve, b: &Curve) -> bool {
    a.coords() == b.coords()
}

/// Approximation through simplification: halve `δ` until the composed
/// morphing's width is within `ratio` of the lower bound
/// `distFr(Ā, B̄) - distFr(A, Ā) - distFr(B, B̄)`.
pub fn frechet_approx(a: &Curve, b: &Curve, ratio: f64) -> Result<DistanceCertificate> {
    let (a, b) = (Arc::new(a.clone()), Arc::new(b.clone()));
    check_pair(&a, &b)?;
    let (pa, pb) = (comp_profile(&a), comp_profile(&b));
    approx_with_profiles(&pa, &pb, ratio, &ExactOptions::default())
}

/// [`frechet_approx`] with precomputed profiles.
pub fn approx_with_profiles(
    pa: &SimplificationProfile,
    pb: &SimplificationProfile,
    ratio: f64,
    opts: &ExactOptions,
) -> Result<DistanceCertificate> {
    if !(ratio > 1.0) {
        return Err(Error::InvalidParameter(format!("ratio must exceed 1, got {ratio}")));
    }
    let (a, b) = (&pa.source, &pb.source);
    check_pair(a, b)?;
    if same_curve(a, b) {
        return exact_arc(a, b, opts);
    }
    let mut br = Bracket::new(endpoint_bound(a, b));
    let mut delta = 0.25 * a.bbox_diagonal().max(b.bbox_diagonal());
    for _ in 0..64 {
        let sa = combined_simplify(pa, delta)?;
        let sb = combined_simplify(pb, delta)?;
        if (sa.len() == a.len() && sb.len() == b.len()) || sa.curve.is_degenerate() || sb.curve.is_degenerate()
        {
            break;
        }
        let inner = exact_arc(&sa.curve, &sb.curve, opts)?;
        br.rounds += 1;
        br.explored += inner.explored;
        let (m, up, w1, w3, _, _) = compose_through(a, &sa, b, &sb, &inner.morphing)?;
        br.offer(inner.lower - w1.min(delta) - w3.min(delta), up, m);
        if closed(br.lower, br.upper, opts.rel_tol) {
            return Ok(br.certificate(CertificateStatus::Exact));
        }
        if br.upper <= ratio * br.lower {
            let r = br.upper / br.lower;
            return Ok(br.certificate(CertificateStatus::Approx(r)));
        }
        delta *= 0.5;
    }
    let exact = exact_arc(a, b, opts)?;
    let status = exact.status;
    br.rounds += 1;
    br.explored += exact.explored;
    br.offer(exact.lower, exact.upper, exact.morphing);
    let status = if closed(br.lower, br.upper, opts.rel_tol) {
        CertificateStatus::Exact
    } else if br.upper <= ratio * br.lower {
        CertificateStatus::Approx(br.upper / br.lower)
    } else {
        status
    };
    Ok(br.certificate(status))
}

/// Per-vertex slack `max(lb - max_σ(v), 0)` for both curves, where `max_σ(v)`
/// is the longest leash attached to vertex `v` by the morphing `σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlackTable {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub lb: f64,
}

// Longest leash at each vertex of the first curve under a monotone morphing.
fn max_leash_at_vertices(m: &Morphing) -> Vec<f64> {
    let (a, b) = (m.curve_a(), m.curve_b());
    let pts = m.points();
    let mut out = vec![0.0f64; a.len()];
    let mut pb = vec![0.0; b.dim()];
    let mut i = 0;
    for w in pts.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        while i < a.len() && a.prefix(i) < x0 {
            i += 1;
        }
        let mut k = i;
        while k < a.len() && a.prefix(k) <= x1 {
            let xv = a.prefix(k);
            let ys: &[f64] = if x1 == x0 {
                &[y0, y1]
            } else {
                &[y0 + (xv - x0) / (x1 - x0) * (y1 - y0)]
            };
            for &y in ys {
                b.eval_into(y, &mut pb);
                out[k] = out[k].max(dist_slice(a.vertex(k), &pb));
            }
            k += 1;
        }
    }
    out
}

impl SlackTable {
    pub fn from_morphing(m: &Morphing, lb: f64) -> Result<Self> {
        if !m.is_monotone() {
            return Err(Error::Precondition("slack needs a monotone morphing".into()));
        }
        let slack = |v: Vec<f64>| v.into_iter().map(|x| (lb - x).max(0.0)).collect();
        Ok(SlackTable {
            a: slack(max_leash_at_vertices(m)),
            b: slack(max_leash_at_vertices(&m.transpose())),
            lb,
        })
    }
}

/// Simplification that lets vertex `p_i` be represented by an earlier kept
/// vertex `r` as long as `d(p_i, r) <= slack(p_i) / tau`.
pub fn sensitive_simplify(c: &Curve, slack: &[f64], tau: f64) -> Result<SimplifiedCurve> {
    if slack.len() != c.len() {
        return Err(Error::InvalidParameter("one slack value per vertex expected".into()));
    }
    if !(tau > 0.0) {
        return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
    }
    let n = c.len();
    let mut idx = vec![0];
    let mut rep = 0;
    for i in 1..n - 1 {
        let s = slack[i];
        if s <= 0.0 || dist_slice(c.vertex(i), c.vertex(rep)) > s / tau {
            idx.push(i);
            rep = i;
        }
    }
    idx.push(n - 1);
    Ok(SimplifiedCurve::from_indices(c, &idx))
}

/// Exact distance driven by simplification: a 4-approximate morphing yields
/// slack for every vertex, the curves are simplified sensitively to it, and
/// the exact distance of the simplified pair is composed into an upper bound
/// that is compared with the offset lower bound. `τ` doubles until they
/// meet.
pub fn frechet_exact_via_simplification(
    a: &Curve,
    b: &Curve,
    opts: &ExactOptions,
) -> Result<DistanceCertificate> {
    let (a, b) = (Arc::new(a.clone()), Arc::new(b.clone()));
    check_pair(&a, &b)?;
    let (pa, pb) = (comp_profile(&a), comp_profile(&b));
    let approx = approx_with_profiles(&pa, &pb, 4.0, opts)?;
    if approx.is_exact() {
        return Ok(approx);
    }
    let mut br = Bracket::new(approx.lower);
    br.rounds = approx.rounds;
    br.explored = approx.explored;
    br.offer(approx.lower, approx.upper, approx.morphing);
    let mut tau = 4.0;
    loop {
        let slack = SlackTable::from_morphing(br.morphing.as_ref().unwrap(), br.lower)?;
        let sa = sensitive_simplify(&a, &slack.a, tau)?;
        let sb = sensitive_simplify(&b, &slack.b, tau)?;
        br.rounds += 1;
        if (sa.len() == a.len() && sb.len() == b.len()) || sa.curve.is_degenerate() || sb.curve.is_degenerate()
        {
            let exact = exact_arc(&a, &b, opts)?;
            br.explored += exact.explored;
            br.offer(exact.lower, exact.upper, exact.morphing);
            let status = if closed(br.lower, br.upper, opts.rel_tol) {
                CertificateStatus::Exact
            } else {
                CertificateStatus::IterationCapped
            };
            return Ok(br.certificate(status));
        }
        let inner = exact_arc(&sa.curve, &sb.curve, opts)?;
        br.explored += inner.explored;
        let (m, up, _, _, wa, wb) = compose_through(&a, &sa, &b, &sb, &inner.morphing)?;
        let lo = frechet_lower_bound_d(&sa.curve, &sb.curve, &wa, &wb, opts)?;
        br.offer(lo, up, m);
        if closed(br.lower, br.upper, opts.rel_tol) {
            return Ok(br.certificate(CertificateStatus::Exact));
        }
        tau *= 2.0;
    }
}

/// Outcome of [`decide`]. Equality within tolerance counts as `Below`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Below,
    Above,
}

/// Decides whether the Fréchet distance is at most `threshold`.
pub fn decide(a: &Curve, b: &Curve, threshold: f64) -> Result<Verdict> {
    let (a, b) = (Arc::new(a.clone()), Arc::new(b.clone()));
    check_pair(&a, &b)?;
    decide_with_profiles(&comp_profile(&a), &comp_profile(&b), threshold, &ExactOptions::default())
}

/// [`decide`] with precomputed profiles. Progressively finer simplifications
/// are tried first; each yields a bracket through the triangle inequality,
/// and the VE search is abandoned as soon as it cannot stay below the
/// threshold.
pub fn decide_with_profiles(
    pa: &SimplificationProfile,
    pb: &SimplificationProfile,
    threshold: f64,
    opts: &ExactOptions,
) -> Result<Verdict> {
    if threshold.is_nan() {
        return Err(Error::InvalidParameter("threshold is NaN".into()));
    }
    let (a, b) = (&pa.source, &pb.source);
    check_pair(a, b)?;
    if endpoint_bound(a, b) > threshold {
        return Ok(Verdict::Above);
    }
    if diameter_bound(a, b) <= threshold {
        return Ok(Verdict::Below);
    }
    let mut delta = threshold / 4.0;
    while delta > 0.0 {
        let sa = combined_simplify(pa, delta)?;
        let sb = combined_simplify(pb, delta)?;
        if (sa.len() == a.len() && sb.len() == b.len()) || sa.curve.is_degenerate() || sb.curve.is_degenerate()
        {
            break;
        }
        let (_, w1, _) = greedy_morphing(a, &sa)?;
        let (_, w3, _) = greedy_morphing(b, &sb)?;
        let slack = w1.min(delta) + w3.min(delta);
        match ve_search(&sa.curve, &sb.curve, None, Some(threshold + slack))? {
            None => return Ok(Verdict::Above),
            Some(r) => {
                let mono = r.morphing.monotonize();
                let up = match mono.width() {
                    Ok(w) => w,
                    Err(_) => mono.split_at_grid().width()?,
                };
                if up + slack <= threshold {
                    return Ok(Verdict::Below);
                }
                if r.distance - slack > threshold {
                    return Ok(Verdict::Above);
                }
            }
        }
        delta *= 0.5;
        if delta < 1e-6 * threshold {
            break;
        }
    }
    if ve_search(a, b, None, Some(threshold))?.is_none() {
        return Ok(Verdict::Above);
    }
    let cert = exact_arc(a, b, opts)?;
    if cert.lower > threshold * (1.0 + opts.rel_tol) {
        return Ok(Verdict::Above);
    }
    Ok(if cert.upper <= threshold * (1.0 + opts.rel_tol) { Verdict::Below } else { Verdict::Above })
}
