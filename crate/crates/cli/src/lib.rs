//! Front end for `frechet-core`: curve files, query batches, reports.
//!
//! Curve files hold one vertex per line as whitespace-separated decimals;
//! lines starting with `#` are comments. Query files hold one
//! `path_a path_b threshold` triple per line; relative paths are resolved
//! against the query file's directory.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use frechet_core::driver::{approx_with_profiles, decide_with_profiles};
use frechet_core::{
    cdtw_lower_bound, comp_profile, discrete_frechet_dp, frechet_exact,
    frechet_exact_via_simplification, retractable_discrete_frechet, sweep_distance, ve_frechet,
    CertificateStatus, Curve, ExactOptions, Morphing, Point, SimplificationProfile, Verdict,
    SWEEP_MAX_ROUNDS,
};
use serde::{Deserialize, Serialize};

/// A curve read from disk.
#[derive(Debug, Clone)]
pub struct LoadedCurve {
    pub curve: Curve,
    /// Consecutive duplicate vertices that were dropped.
    pub duplicates: usize,
}

/// Parses the text curve format. `origin` names the source in errors.
pub fn parse_curve(text: &str, origin: &str) -> Result<LoadedCurve> {
    let mut points: Vec<Point> = Vec::new();
    let mut dim = None;
    let mut duplicates = 0;
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .with_context(|| format!("{origin}:{}: not a list of numbers", k + 1))?;
        match dim {
            None => dim = Some(coords.len()),
            Some(d) if d != coords.len() => {
                bail!("{origin}:{}: expected {d} coordinates, found {}", k + 1, coords.len())
            }
            _ => {}
        }
        let p = Point::new(coords).map_err(|e| anyhow!("{origin}:{}: {e}", k + 1))?;
        if points.last().is_some_and(|q| q.coords() == p.coords()) {
            duplicates += 1;
            continue;
        }
        points.push(p);
    }
    if points.len() < 2 {
        bail!("{origin}: need at least two distinct vertices, found {}", points.len());
    }
    let curve = Curve::new(&points).map_err(|e| anyhow!("{origin}: {e}"))?;
    Ok(LoadedCurve { curve, duplicates })
}

pub fn load_curve(path: &Path) -> Result<LoadedCurve> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_curve(&text, &path.display().to_string())
}

/// Writes curve vertices in the text format.
pub fn write_curve(path: &Path, c: &Curve) -> Result<()> {
    let mut s = String::new();
    for p in c.points() {
        let line: Vec<String> = p.coords().iter().map(|x| format!("{x:?}")).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    fs::write(path, s).with_context(|| format!("cannot write {}", path.display()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub t_a: f64,
    pub t_b: f64,
    pub leash: f64,
}

/// JSON form of a morphing: arc-length pairs with their leash lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorphingReport {
    pub mode: String,
    pub width: f64,
    pub lower: f64,
    pub upper: f64,
    pub events: Vec<Event>,
}

impl MorphingReport {
    pub fn new(mode: &str, m: &Morphing, lower: f64, upper: f64) -> Self {
        let leash = m.leashes();
        let events = m
            .points()
            .iter()
            .zip(&leash)
            .map(|(&(t_a, t_b), &leash)| Event { t_a, t_b, leash })
            .collect();
        let width = leash.iter().copied().fold(0.0, f64::max);
        MorphingReport { mode: mode.to_string(), width, lower, upper, events }
    }

    pub fn to_json(&self) -> String {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits);
        self.serialize(&mut ser).expect("serializing to memory");
        String::from_utf8(out).expect("JSON is UTF-8")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Writes every float with 17 significant digits, which round-trips `f64`.
struct SigDigits;

impl serde_json::ser::Formatter for SigDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }
}

/// SVG drawing of both curves (first two coordinates) with the leashes at
/// the morphing vertices.
pub fn morphing_svg(m: &Morphing) -> String {
    let (a, b) = (m.curve_a(), m.curve_b());
    let xy = |p: &[f64]| (p[0], if p.len() > 1 { p[1] } else { 0.0 });
    let all: Vec<(f64, f64)> =
        a.points().iter().chain(b.points().iter()).map(|p| xy(p.coords())).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &all {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let size = 800.0;
    let pad = 20.0;
    let map = |(x, y): (f64, f64)| (pad + (x - x0) / span * size, pad + (y1 - y) / span * size);
    let mut s = String::new();
    let (w, h) = (2.0 * pad + (x1 - x0) / span * size, 2.0 * pad + (y1 - y0) / span * size);
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.1}" height="{h:.1}">"#
    );
    let mut pa = vec![0.0; a.dim()];
    let mut pb = vec![0.0; b.dim()];
    for &(ta, tb) in m.points() {
        pa = frechet_core::point_at_arclength(a, ta).map(|p| p.coords().to_vec()).unwrap_or(pa);
        pb = frechet_core::point_at_arclength(b, tb).map(|p| p.coords().to_vec()).unwrap_or(pb);
        let ((ax, ay), (bx, by)) = (map(xy(&pa)), map(xy(&pb)));
        let _ = writeln!(
            s,
            r##"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="#999" stroke-width="0.5"/>"##
        );
    }
    for (c, color) in [(a, "#c33"), (b, "#33c")] {
        let pts: Vec<String> = c
            .points()
            .iter()
            .map(|p| {
                let (x, y) = map(xy(p.coords()));
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Ve,
    Exact,
    ExactSimplified,
    Approx,
    Sweep,
    Discrete,
    RetractableDiscrete,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Ve => "ve",
            Mode::Exact => "exact",
            Mode::ExactSimplified => "exact-simplified",
            Mode::Approx => "approx",
            Mode::Sweep => "sweep",
            Mode::Discrete => "discrete",
            Mode::RetractableDiscrete => "retractable-discrete",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DistArgs {
    pub mode: Mode,
    pub ratio: f64,
    pub max_rounds: usize,
    pub json: bool,
    pub svg: Option<PathBuf>,
    pub allow_approx: bool,
}

impl Default for DistArgs {
    fn default() -> Self {
        DistArgs { mode: Mode::Exact, ratio: 1.1, max_rounds: 100, json: false, svg: None, allow_approx: false }
    }
}

/// Outcome of one distance computation.
#[derive(Debug, Clone)]
pub struct DistOutcome {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub rounds: usize,
    pub explored: usize,
    /// False if the result is only a capped bracket.
    pub complete: bool,
    pub morphing: Option<Morphing>,
}

fn vertex_morphing(a: &Curve, b: &Curve, steps: &[(usize, usize)]) -> Result<Morphing> {
    let mut pts: Vec<(f64, f64)> = steps.iter().map(|&(i, j)| (a.prefix(i), b.prefix(j))).collect();
    pts.dedup();
    if pts.len() < 2 {
        pts.push(*pts.last().unwrap());
    }
    Ok(Morphing::new(Arc::new(a.clone()), Arc::new(b.clone()), pts)?)
}

pub fn compute(a: &Curve, b: &Curve, args: &DistArgs) -> Result<DistOutcome> {
    let opts = ExactOptions { max_rounds: args.max_rounds, ..Default::default() };
    let from_cert = |c: frechet_core::DistanceCertificate| DistOutcome {
        value: c.upper,
        lower: c.lower,
        upper: c.upper,
        rounds: c.rounds,
        explored: c.explored,
        complete: c.status != CertificateStatus::IterationCapped,
        morphing: Some(c.morphing),
    };
    Ok(match args.mode {
        Mode::Ve => {
            let r = ve_frechet(a, b)?;
            DistOutcome {
                value: r.distance,
                lower: r.distance,
                upper: r.distance,
                rounds: 0,
                explored: r.explored,
                complete: true,
                morphing: Some(r.morphing),
            }
        }
        Mode::Exact => from_cert(frechet_exact(a, b, &opts)?),
        Mode::ExactSimplified => from_cert(frechet_exact_via_simplification(a, b, &opts)?),
        Mode::Approx => {
            let (pa, pb) = (comp_profile(&Arc::new(a.clone())), comp_profile(&Arc::new(b.clone())));
            from_cert(approx_with_profiles(&pa, &pb, args.ratio, &opts)?)
        }
        Mode::Sweep => {
            let s = sweep_distance(a, b, SWEEP_MAX_ROUNDS)?;
            let lb = cdtw_lower_bound(a, b)?;
            DistOutcome {
                value: s.value,
                lower: lb,
                upper: s.value,
                rounds: s.refinement_rounds,
                explored: 0,
                complete: !s.capped,
                morphing: Some(s.morphing),
            }
        }
        Mode::Discrete | Mode::RetractableDiscrete => {
            let (pa, pb) = (a.points(), b.points());
            let (v, steps, explored) = if args.mode == Mode::Discrete {
                let (v, m) = discrete_frechet_dp(&pa, &pb)?;
                (v, m.steps, a.len() * b.len())
            } else {
                let (v, m, e) = retractable_discrete_frechet(&pa, &pb)?;
                (v, m.steps, e)
            };
            DistOutcome {
                value: v,
                lower: v,
                upper: v,
                rounds: 0,
                explored,
                complete: true,
                morphing: Some(vertex_morphing(a, b, &steps)?),
            }
        }
    })
}

/// `dist`: prints a report and returns the exit code.
pub fn cmd_dist(path_a: &Path, path_b: &Path, args: &DistArgs, out: &mut dyn Write) -> Result<i32> {
    let a = load_curve(path_a)?;
    let b = load_curve(path_b)?;
    for (p, c) in [(path_a, &a), (path_b, &b)] {
        if c.duplicates > 0 {
            eprintln!("warning: {}: dropped {} duplicate vertices", p.display(), c.duplicates);
        }
    }
    let t = Instant::now();
    let r = compute(&a.curve, &b.curve, args)?;
    let elapsed = t.elapsed();
    let name = args.mode.name();
    if args.json {
        let m = r.morphing.as_ref().expect("every mode yields a morphing");
        writeln!(out, "{}", MorphingReport::new(name, m, r.lower, r.upper).to_json())?;
    } else {
        writeln!(out, "mode: {name}")?;
        writeln!(out, "value: {:.17e}", r.value)?;
        writeln!(out, "bracket: [{:.17e}, {:.17e}]", r.lower, r.upper)?;
        writeln!(out, "rounds: {}", r.rounds)?;
        writeln!(out, "explored: {}", r.explored)?;
        if !r.complete {
            writeln!(out, "status: iteration cap reached")?;
        }
        writeln!(out, "time: {:.3} ms", elapsed.as_secs_f64() * 1e3)?;
    }
    if let (Some(path), Some(m)) = (&args.svg, &r.morphing) {
        fs::write(path, morphing_svg(m)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(if r.complete || args.allow_approx { 0 } else { 1 })
}

/// `morphing`: JSON to `out` (and optionally an SVG file) for the morphing
/// computed in `mode`.
pub fn cmd_morphing(path_a: &Path, path_b: &Path, mode: Mode, svg: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let args = DistArgs { mode, ..Default::default() };
    let a = load_curve(path_a)?;
    let b = load_curve(path_b)?;
    let r = compute(&a.curve, &b.curve, &args)?;
    let m = r.morphing.expect("every mode yields a morphing");
    writeln!(out, "{}", MorphingReport::new(mode.name(), &m, r.lower, r.upper).to_json())?;
    if let Some(path) = svg {
        fs::write(path, morphing_svg(&m)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(if r.complete { 0 } else { 1 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub a: PathBuf,
    pub b: PathBuf,
    pub threshold: f64,
}

pub fn parse_queries(text: &str, base: &Path, origin: &str) -> Result<Vec<Query>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            bail!("{origin}:{}: expected `path_a path_b threshold`", k + 1);
        }
        let threshold: f64 =
            f[2].parse().with_context(|| format!("{origin}:{}: bad threshold {:?}", k + 1, f[2]))?;
        if threshold.is_nan() {
            bail!("{origin}:{}: threshold is NaN", k + 1);
        }
        let abs = |p: &str| if Path::new(p).is_absolute() { PathBuf::from(p) } else { base.join(p) };
        out.push(Query { a: abs(f[0]), b: abs(f[1]), threshold });
    }
    Ok(out)
}

/// Profiles per curve path, computed once; optionally persisted in a
/// directory keyed by the SHA-256 of the curve file.
pub struct ProfileCache {
    dir: Option<PathBuf>,
    memo: Mutex<HashMap<PathBuf, Arc<SimplificationProfile>>>,
    write_lock: Mutex<()>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl ProfileCache {
    pub fn new(dir: Option<PathBuf>) -> Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).with_context(|| format!("cannot create {}", d.display()))?;
        }
        Ok(ProfileCache { dir, memo: Mutex::new(HashMap::new()), write_lock: Mutex::new(()) })
    }

    pub fn get(&self, path: &Path) -> Result<Arc<SimplificationProfile>> {
        if let Some(p) = self.memo.lock().unwrap().get(path) {
            return Ok(p.clone());
        }
        let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        let text = String::from_utf8(bytes.clone()).with_context(|| format!("{} is not UTF-8", path.display()))?;
        let curve = Arc::new(parse_curve(&text, &path.display().to_string())?.curve);
        let file = self.dir.as_ref().map(|d| d.join(format!("{}.profile", sha256_hex(&bytes))));
        let cached = file.as_ref().and_then(|f| fs::read(f).ok()).and_then(|raw| {
            SimplificationProfile::from_bytes(&raw, curve.clone()).ok()
        });
        let profile = Arc::new(match cached {
            Some(p) => p,
            None => {
                let p = comp_profile(&curve);
                if let Some(f) = &file {
                    let _guard = self.write_lock.lock().unwrap();
                    let tmp = f.with_extension("tmp");
                    fs::write(&tmp, p.to_bytes()).and_then(|_| fs::rename(&tmp, f))
                        .with_context(|| format!("cannot write {}", f.display()))?;
                }
                p
            }
        });
        self.memo.lock().unwrap().insert(path.to_path_buf(), profile.clone());
        Ok(profile)
    }
}

#[derive(Debug, Clone, Default)]
pub struct DecideArgs {
    pub cache: Option<PathBuf>,
    pub jobs: Option<usize>,
}

/// Verdicts for every query, in input order.
pub fn run_decide(queries: &[Query], args: &DecideArgs) -> Result<Vec<Verdict>> {
    use rayon::prelude::*;
    let cache = ProfileCache::new(args.cache.clone())?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build()?;
    let opts = ExactOptions::default();
    pool.install(|| {
        queries
            .par_iter()
            .map(|q| {
                let pa = cache.get(&q.a)?;
                let pb = cache.get(&q.b)?;
                decide_with_profiles(&pa, &pb, q.threshold, &opts)
                    .with_context(|| format!("{} vs {}", q.a.display(), q.b.display()))
            })
            .collect()
    })
}

/// `decide`: one `BELOW`/`ABOVE` line per query.
pub fn cmd_decide(query_file: &Path, args: &DecideArgs, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(query_file).with_context(|| format!("cannot read {}", query_file.display()))?;
    let base = query_file.parent().unwrap_or(Path::new("."));
    let queries = parse_queries(&text, base, &query_file.display().to_string())?;
    for v in run_decide(&queries, args)? {
        writeln!(out, "{}", if v == Verdict::Below { "BELOW" } else { "ABOVE" })?;
    }
    Ok(0)
}
