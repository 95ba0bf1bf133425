mod common;

use common::*;
use frechet_core::*;
use frechet_testkit as tk;
use proptest::prelude::*;
use rand::Rng;

fn quad(a: f64, b: f64, c: f64, x0: f64, x1: f64) -> f64 {
    let f = |x: f64| (a * x * x + b * x + c).max(0.0).sqrt();
    tk::simpson(&f, x0, x1, 1e-13 * (1.0 + f(x0) + f(x1)) * (x1 - x0).max(1e-300))
}

// a((x + r)² + k²) expanded.
fn random_quadratic<R: Rng>(r: &mut R, degenerate: bool) -> (f64, f64, f64) {
    let a = r.gen_range(0.01..10.0);
    let shift = r.gen_range(-5.0..5.0);
    let k2: f64 = if degenerate { r.gen_range(0.0..1e-11) / (a * a) } else { r.gen_range(0.0..4.0) };
    (a, 2.0 * a * shift, a * (shift * shift + k2))
}

#[test]
fn integral_matches_quadrature() {
    let mut r = tk::rng(8);
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let (a, b, c) = match k % 4 {
            0 | 1 => random_quadratic(&mut r, false),
            2 => random_quadratic(&mut r, true),
            _ => (0.0, 0.0, r.gen_range(0.0..10.0)),
        };
        if k % 4 == 2 {
            assert!(b * b - 4.0 * a * c <= 1e-10 * (1.0 + b * b));
        }
        let x0 = r.gen_range(-6.0..6.0);
        let x1 = x0 + r.gen_range(0.0..6.0);
        let q = QuadraticUnderRoot::new(a, b, c).unwrap();
        let got = integral_sqrt_quadratic(&q, x0, x1).unwrap();
        let want = quad(a, b, c, x0, x1);
        let rel = (got - want).abs() / want.abs().max(1e-300);
        worst = worst.max(if want == 0.0 { got.abs() } else { rel });
        assert!(rel <= 1e-8 || (got - want).abs() < 1e-14, "({a},{b},{c}) on [{x0},{x1}]: {got} vs {want}");
    }
    println!("closed form vs quadrature: worst relative error {worst:.2e}");
}

#[test]
fn integral_branches_and_errors() {
    let q = QuadraticUnderRoot::new(0.0, 0.0, 1.0).unwrap();
    assert_eq!(integral_sqrt_quadratic(&q, 0.0, 10.0).unwrap(), 10.0);
    let q = QuadraticUnderRoot::new(1.0, 0.0, 0.0).unwrap();
    assert!((integral_sqrt_quadratic(&q, 0.0, 2.0).unwrap() - 2.0).abs() < 1e-15);
    // |x - 1| over [0, 3] = 1/2 + 2.
    let q = QuadraticUnderRoot::new(1.0, -2.0, 1.0).unwrap();
    assert!((integral_sqrt_quadratic(&q, 0.0, 3.0).unwrap() - 2.5).abs() < 1e-14);
    // √(2x + 1) over [0, 4]: (27 - 1) / 3.
    let q = QuadraticUnderRoot::new(0.0, 2.0, 1.0).unwrap();
    assert!((integral_sqrt_quadratic(&q, 0.0, 4.0).unwrap() - 26.0 / 3.0).abs() < 1e-13);
    assert!(QuadraticUnderRoot::new(1.0, 0.0, -4.0).is_err());
    assert!(integral_sqrt_quadratic(&q, 1.0, 0.0).is_err());
    assert!(integral_sqrt_quadratic(&q, -3.0, 0.0).is_err());
}

#[test]
fn edge_price_examples() {
    let p = [0.0, 0.0];
    let q = [3.0, 1.0];
    assert_eq!(edge_price(&p, &q, &p, &q).unwrap(), 0.0);
    let v = edge_price(&[0.0, 0.0], &[7.0, 0.0], &[0.0, 1.0], &[7.0, 1.0]).unwrap();
    assert!((v - 14.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_price_matches_quadrature(seed in any::<u64>()) {
        let mut r = tk::rng(seed);
        let mut p = || vec![r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0)];
        let (p0, p1, q0, q1) = (p(), p(), p(), p());
        let leash = |t: f64| (0..3).map(|k| {
            let x = p0[k] + t * (p1[k] - p0[k]) - q0[k] - t * (q1[k] - q0[k]);
            x * x
        }).sum::<f64>().sqrt();
        let len = |u: &[f64], v: &[f64]| (0..3).map(|k| (u[k] - v[k]).powi(2)).sum::<f64>().sqrt();
        let (la, lb) = (len(&p0, &p1), len(&q0, &q1));
        let mean = tk::simpson(&leash, 0.0, 1.0, 1e-14);
        let want = la * mean + lb * mean;
        let got = edge_price(&p0, &p1, &q0, &q1).unwrap();
        prop_assert!((got - want).abs() <= 1e-8 * want.max(1e-12));
    }
}

#[test]
fn parallel_translates() {
    // A bent polyline can do better than 2L: overlapping collinear edges
    // let the leash shrink.
    let a = curve2(&[(0.0, 0.0), (3.0, 0.0), (3.0, 4.0), (6.0, 4.0), (6.0, 0.0)]);
    let b = curve2(&[(0.0, 1.0), (3.0, 1.0), (3.0, 5.0), (6.0, 5.0), (6.0, 1.0)]);
    let s = sweep_distance(&a, &b, SWEEP_MAX_ROUNDS).unwrap();
    assert!(s.value < 28.0 && s.value >= cdtw_lower_bound(&a, &b).unwrap());
    let line = curve2(&[(0.0, 0.0), (2.5, 0.0), (4.0, 0.0), (10.0, 0.0)]);
    let above = curve2(&[(0.0, 1.0), (5.0, 1.0), (7.0, 1.0), (10.0, 1.0)]);
    let s = sweep_distance(&line, &above, SWEEP_MAX_ROUNDS).unwrap();
    assert!((s.value - 20.0).abs() < 1e-6, "{}", s.value);
    assert!((cdtw_lower_bound(&line, &above).unwrap() - 20.0).abs() < 1e-9);
    let straight = curve2(&[(0.0, 0.0), (10.0, 0.0)]);
    let shifted = curve2(&[(0.0, 1.0), (10.0, 1.0)]);
    assert!((sweep_distance(&straight, &shifted, SWEEP_MAX_ROUNDS).unwrap().value - 20.0).abs() < 1e-6);
    assert!((cdtw_lower_bound(&straight, &shifted).unwrap() - 20.0).abs() < 1e-9);
    assert_eq!(sweep_distance(&a, &a, SWEEP_MAX_ROUNDS).unwrap().value, 0.0);
    assert_eq!(cdtw_lower_bound(&a, &a).unwrap(), 0.0);
}

#[test]
fn split_counts() {
    let mut c = curve2(&[(0.0, 0.0), (1.0, 2.0), (3.0, 1.0), (4.0, 4.0)]);
    let (n, len) = (c.len(), c.length());
    for i in 1..=4 {
        c = split(&c);
        assert_eq!(c.len(), (n - 1) * (1 << i) + 1);
        assert_eq!(c.length(), len);
    }
}

#[test]
fn bracket_and_convergence() {
    let mut r = tk::rng(12);
    let (mut improved, trials) = (0, 200);
    for t in 0..trials {
        let (n, m) = (r.gen_range(2..=8), r.gen_range(2..=8));
        let a = curve(&tk::random_curve(&mut r, n, 2, 10.0));
        let b = curve(&tk::random_curve(&mut r, m, 2, 10.0));
        let s = sweep_distance(&a, &b, SWEEP_MAX_ROUNDS).unwrap();
        let lb = cdtw_lower_bound(&a, &b).unwrap();
        assert!(lb <= s.value * (1.0 + 1e-9), "{lb} > {}", s.value);
        assert!(s.morphing.is_monotone());
        assert!((warping_cost(&s.morphing) - s.value).abs() <= 1e-12 * s.value.max(1.0));
        if t < 40 {
            let (mut a4, mut b4) = (a.clone(), b.clone());
            for _ in 0..4 {
                a4 = split(&a4);
                b4 = split(&b4);
            }
            let s4 = sweep_distance(&a4, &b4, SWEEP_MAX_ROUNDS).unwrap();
            let lb4 = cdtw_lower_bound(&a4, &b4).unwrap();
            assert!(lb4 <= s4.value * (1.0 + 1e-9));
            if s4.value - lb4 <= s.value - lb + 1e-9 {
                improved += 1;
            }
        }
    }
    println!("gap shrank after 4 splits on {improved}/40");
    assert!(improved >= 36);
}
