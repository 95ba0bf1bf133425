mod common;

use common::*;
use frechet_core::*;
use frechet_testkit as tk;
use proptest::prelude::*;
use rand::Rng;
use std::sync::Arc;

fn exact(a: &Curve, b: &Curve) -> f64 {
    let c = frechet_exact(a, b, &ExactOptions::default()).unwrap();
    assert!(c.is_exact());
    c.upper
}

fn check_subsequence(s: &SimplifiedCurve, n: usize) {
    assert_eq!(s.indices[0], 0);
    assert_eq!(*s.indices.last().unwrap(), n - 1);
    assert!(s.indices.windows(2).all(|w| w[0] < w[1]));
}

fn spine_of(c: &Curve, i: usize, k: usize) -> f64 {
    let sub = c.subcurve(i, k);
    let s = Segment::new(c.point(i), c.point(k)).unwrap();
    spine_morphing(&sub, &s).unwrap().1
}

#[test]
fn delta_examples() {
    let c = curve2(&[(0.0, 0.0), (0.4, 0.0), (0.9, 0.0), (2.0, 0.0)]);
    assert_eq!(delta_simplify(&c, 1.0).unwrap().indices, vec![0, 3]);
    let r = curve2(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]);
    assert_eq!(delta_simplify(&r, 100.0).unwrap().indices, vec![0, 3]);
    assert!(delta_simplify(&r, 0.0).is_err());
}

#[test]
fn spine_examples() {
    let s = seg((0.0, 0.0), (2.0, 0.0));
    let c = curve2(&[(0.0, 0.0), (2.0, 0.0)]);
    assert_eq!(spine_morphing(&c, &s).unwrap().1, 0.0);
    let bump = curve2(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
    let (m, w) = spine_morphing(&bump, &s).unwrap();
    assert_eq!(w, 1.0);
    assert!(m.is_monotone());
    let bad = seg((-1.0, 0.0), (3.0, 0.0));
    assert!(spine_morphing(&bump, &bad).is_err());
}

#[test]
fn greedy_morphing_examples() {
    let c = Arc::new(curve2(&[(0.0, 0.0), (1.0, 2.0), (3.0, 1.0)]));
    let full = SimplifiedCurve::from_indices(&c, &[0, 1, 2]);
    let (m, w, _) = greedy_morphing(&c, &full).unwrap();
    assert_eq!(w, 0.0);
    assert!(m.points().iter().all(|&(x, y)| x == y));
    let delta = 0.5;
    let bump = Arc::new(curve2(&[(0.0, 0.0), (1.0, 0.4), (2.0, 0.0), (4.0, 0.0)]));
    let s = delta_simplify(&bump, delta).unwrap();
    let (_, w, _) = greedy_morphing(&bump, &s).unwrap();
    assert!(w <= 2.0 * delta);
}

#[test]
fn profile_examples() {
    let tent = Arc::new(curve2(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]));
    assert_eq!(comp_profile(&tent).values, vec![0.0, 0.0, 0.0]);
    let c = Arc::new(curve2(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 1.0), (4.0, 0.0), (5.0, 1.0)]));
    let p = comp_profile(&c);
    let max = p.values.iter().copied().fold(0.0, f64::max);
    assert_eq!(extract(&p, max).unwrap().indices, vec![0, 2, 5]);
    assert_eq!(extract(&p, 0.0).unwrap().indices, vec![0, 1, 2, 3, 4, 5]);
    let back = SimplificationProfile::from_bytes(&p.to_bytes(), c.clone()).unwrap();
    assert_eq!(back, p);
    assert!(SimplificationProfile::from_bytes(&p.to_bytes()[..12], c).is_err());
}

#[test]
fn straight_curves_collapse() {
    let c = Arc::new(curve2(&[(0.0, 0.0), (1.0, 1.0), (2.5, 2.5), (4.0, 4.0), (5.0, 5.0)]));
    assert_eq!(greedy_simplify(&c, 1e-6).unwrap().indices, vec![0, 4]);
    assert_eq!(combined_simplify(&comp_profile(&c), 1e-6).unwrap().indices, vec![0, 4]);
    let r = Arc::new(curve2(&[(0.0, 0.0), (1.0, 3.0), (2.0, -1.0), (3.0, 0.0)]));
    assert_eq!(combined_simplify(&comp_profile(&r), 100.0).unwrap().indices, vec![0, 3]);
}

#[test]
fn counterexample_blocks_greedy() {
    let (a, _) = tk::spine_counterexample(8);
    let c = curve(&a);
    assert!(spine_of(&c, 0, c.len() - 1) > 0.4);
    let s = greedy_simplify(&c, 1.0 / 16.0).unwrap();
    assert!(s.len() > 2);
}

#[test]
fn sensitive_examples() {
    let c = curve2(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 1.0), (4.0, 0.0)]);
    assert_eq!(sensitive_simplify(&c, &[0.0; 5], 4.0).unwrap().indices, vec![0, 1, 2, 3, 4]);
    let diam = c.bbox_diagonal();
    assert_eq!(sensitive_simplify(&c, &[4.0 * diam; 5], 4.0).unwrap().indices, vec![0, 4]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn simplifiers_are_within_delta(seed in any::<u64>(), n in 3usize..=30, delta in 0.2f64..5.0) {
        let mut r = tk::rng(seed);
        let c = Arc::new(curve(&tk::random_walk(&mut r, n, 1.0)));
        let prof = comp_profile(&c);
        let ds = delta_simplify(&c, delta).unwrap();
        for w in ds.indices.windows(2).take(ds.len().saturating_sub(2)) {
            prop_assert!(dist(&c.point(w[0]), &c.point(w[1])).unwrap() >= delta);
        }
        let (_, gw, _) = greedy_morphing(&c, &ds).unwrap();
        prop_assert!(gw <= 2.0 * delta * (1.0 + 1e-12));
        for s in [ds, greedy_simplify(&c, delta).unwrap(), combined_simplify(&prof, delta).unwrap(), extract(&prof, delta).unwrap()] {
            check_subsequence(&s, c.len());
            if s.curve.is_degenerate() {
                continue;
            }
            let d = exact(&c, &s.curve);
            prop_assert!(d <= delta * (1.0 + 1e-9), "{:?} {} > {}", s.indices, d, delta);
            let (_, w, _) = greedy_morphing(&c, &s).unwrap();
            prop_assert!(w >= d * (1.0 - 1e-9));
        }
    }

    #[test]
    fn spine_is_three_approximate(seed in any::<u64>(), n in 2usize..=12) {
        let mut r = tk::rng(seed);
        let c = curve(&tk::random_curve(&mut r, n, 2, 10.0));
        let s = Segment::new(c.point(0), c.point(n - 1)).unwrap();
        prop_assume!(s.length() > 1e-6);
        let (m, w) = spine_morphing(&c, &s).unwrap();
        prop_assert!(m.is_monotone());
        let opt = exact(&c, &curve(&vec![s.start.coords().to_vec(), s.end.coords().to_vec()]));
        prop_assert!(w >= opt * (1.0 - 1e-9) && w <= 3.0 * opt + 1e-9, "{} vs {}", w, opt);
    }

    #[test]
    fn profile_matches_recomputation(seed in any::<u64>(), n in 3usize..=64) {
        let mut r = tk::rng(seed);
        let c = Arc::new(curve(&tk::random_walk(&mut r, n, 1.0)));
        let p = comp_profile(&c);
        let mut stack = vec![(0, n - 1)];
        let mut filled = vec![false; n];
        while let Some((i, j)) = stack.pop() {
            if j - i < 2 {
                continue;
            }
            let k = (i + j) / 2;
            let want = spine_of(&c, i, k).max(spine_of(&c, k, j));
            prop_assert!((p.values[k] - want).abs() <= 1e-12 * want.max(1.0));
            filled[k] = true;
            stack.push((i, k));
            stack.push((k, j));
        }
        prop_assert_eq!(p.values[0], 0.0);
        prop_assert_eq!(p.values[n - 1], 0.0);
    }

    #[test]
    fn sensitive_respects_slack(seed in any::<u64>(), n in 2usize..=40, tau in 1.0f64..16.0) {
        let mut r = tk::rng(seed);
        let c = curve(&tk::random_walk(&mut r, n, 1.0));
        let slack: Vec<f64> = (0..n).map(|_| if r.gen_bool(0.2) { 0.0 } else { r.gen::<f64>() * 10.0 }).collect();
        let s = sensitive_simplify(&c, &slack, tau).unwrap();
        check_subsequence(&s, n);
        let mut rep = 0;
        for i in 0..n {
            if s.indices.contains(&i) {
                rep = i;
                continue;
            }
            prop_assert!(slack[i] > 0.0);
            prop_assert!(dist(&c.point(i), &c.point(rep)).unwrap() <= slack[i] / tau);
        }
    }
}

#[test]
fn greedy_usually_not_larger_than_delta_scan() {
    let mut r = tk::rng(99);
    let mut wins = 0;
    for _ in 0..100 {
        let n = r.gen_range(5..60);
        let c = curve(&tk::random_walk(&mut r, n, 1.0));
        let delta = r.gen_range(0.3..3.0);
        if greedy_simplify(&c, delta).unwrap().len() <= delta_simplify(&c, delta).unwrap().len() {
            wins += 1;
        }
    }
    println!("greedy no larger than the scan on {wins}/100");
    assert!(wins >= 80, "{wins}");
}
