mod common;

use common::*;
use frechet_core::*;
use frechet_testkit as tk;
use proptest::prelude::*;
use rand::Rng;
use std::sync::Arc;

fn opts() -> ExactOptions {
    ExactOptions::default()
}

#[test]
fn exact_examples() {
    let a = curve2(&[(0.0, 0.0), (1.0, 2.0), (3.0, 1.0), (4.0, 4.0)]);
    let c = frechet_exact(&a, &a, &opts()).unwrap();
    assert_eq!((c.upper, c.rounds, c.status), (0.0, 0, CertificateStatus::Exact));
    let s1 = curve2(&[(0.0, 0.0), (10.0, 0.0)]);
    let s2 = curve2(&[(0.0, 2.0), (10.0, 1.0)]);
    let c = frechet_exact(&s1, &s2, &opts()).unwrap();
    assert_eq!((c.upper, c.rounds, c.status), (2.0, 0, CertificateStatus::Exact));
    assert!(frechet_exact(&s1, &curve(&vec![vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0]]), &opts()).is_err());
}

#[test]
fn zigzag_family_converges() {
    let mut worst_rounds = 0;
    for seed in 0..20 {
        let (pa, pb) = tk::zigzag_pair(seed);
        let (a, b) = (curve(&pa), curve(&pb));
        let c = frechet_exact(&a, &b, &opts()).unwrap();
        assert_eq!(c.status, CertificateStatus::Exact, "seed {seed}");
        assert!(c.rounds <= 10, "seed {seed}: {} rounds", c.rounds);
        assert!(c.upper - c.lower <= 1e-10 * c.upper);
        assert!(c.morphing.is_monotone());
        assert!((c.morphing.split_at_grid().width().unwrap() - c.upper).abs() <= 1e-12 * c.upper);
        let dense = tk::dense_frechet(&pa, &pb, 500);
        assert!((dense - c.upper).abs() <= 0.01 * c.upper, "seed {seed}: {dense} vs {}", c.upper);
        worst_rounds = worst_rounds.max(c.rounds);
    }
    println!("zigzag family: at most {worst_rounds} rounds");
}

#[test]
fn bisector_refine_examples() {
    let a = curve2(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
    let m = ve_frechet(&a, &a).unwrap().morphing;
    assert!(m.is_monotone());
    let (a2, b2) = bisector_refine(&a, &a, &m);
    assert_eq!((a2.len(), b2.len()), (3, 3));
    // A non-monotone VE morphing leads to insertions on the zigzag edges.
    let (pa, pb) = tk::zigzag_pair(2);
    let (a, b) = (curve(&pa), curve(&pb));
    let ve = ve_frechet(&a, &b).unwrap();
    if !ve.morphing.is_monotone() {
        let (a2, b2) = bisector_refine(&a, &b, &ve.morphing);
        assert!(a2.len() + b2.len() >= a.len() + b.len());
        assert_eq!(a2.length(), a.length());
    }
}

#[test]
fn approx_examples() {
    let a = curve2(&[(0.0, 0.0), (1.0, 2.0), (3.0, 1.0), (4.0, 4.0)]);
    let c = frechet_approx(&a, &a, 2.0).unwrap();
    assert_eq!(c.upper, 0.0);
    assert!(frechet_approx(&a, &a, 1.0).is_err());
    let mut r = tk::rng(1);
    let w = tk::random_walk(&mut r, 300, 0.1);
    let far: tk::Pts = w.iter().map(|p| vec![p[0], p[1] + 1000.0]).collect();
    let c = frechet_approx(&curve(&w), &curve(&far), 1.01).unwrap();
    assert!(c.upper <= 1.01 * c.lower && c.lower <= 1000.0 && c.upper >= 1000.0, "{} {}", c.lower, c.upper);
    assert_eq!(c.rounds, 1);
}

#[test]
fn approx_on_walks() {
    let mut r = tk::rng(2);
    let pa = tk::random_walk(&mut r, 2000, 1.0);
    let pb = tk::perturb(&mut r, &pa, 0.3);
    let (a, b) = (curve(&pa), curve(&pb));
    let c = frechet_approx(&a, &b, 4.0).unwrap();
    assert!(c.upper <= 4.0 * c.lower);
    let ex = frechet_exact(&a, &b, &opts()).unwrap();
    assert!(c.lower <= ex.upper * (1.0 + 1e-9) && ex.upper <= c.upper * (1.0 + 1e-9));
}

#[test]
fn via_simplification_large() {
    let mut r = tk::rng(3);
    let pa = tk::random_walk(&mut r, 10_000, 1.0);
    let pb = tk::perturb(&mut r, &pa, 0.05);
    let (a, b) = (curve(&pa), curve(&pb));
    let v = frechet_exact_via_simplification(&a, &b, &opts()).unwrap();
    assert_eq!(v.status, CertificateStatus::Exact);
    let e = frechet_exact(&a, &b, &opts()).unwrap();
    assert!((v.upper - e.upper).abs() <= 1e-10 * e.upper);
}

#[test]
fn lower_bound_d_examples() {
    let a = curve2(&[(0.0, 0.0), (1.0, 2.0), (3.0, 1.0), (4.0, 4.0)]);
    let b = curve2(&[(0.0, 1.0), (2.0, 2.0), (4.0, 3.0)]);
    let e = frechet_exact(&a, &b, &opts()).unwrap();
    let d = frechet_lower_bound_d(&a, &b, &[0.0; 3], &[0.0; 2], &opts()).unwrap();
    assert!((d - e.upper).abs() <= 1e-10 * e.upper);
    assert_eq!(frechet_lower_bound_d(&a, &b, &[100.0; 3], &[100.0; 2], &opts()).unwrap(), 0.0);
    assert!(frechet_lower_bound_d(&a, &b, &[0.0; 2], &[0.0; 2], &opts()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn certificate_brackets(seed in any::<u64>(), n in 2usize..=12, m in 2usize..=12) {
        let mut r = tk::rng(seed);
        let pa = tk::random_curve(&mut r, n, 2, 10.0);
        let pb = tk::random_curve(&mut r, m, 2, 10.0);
        let (a, b) = (curve(&pa), curve(&pb));
        let c = frechet_exact(&a, &b, &opts()).unwrap();
        prop_assert!(c.lower <= c.upper);
        prop_assert!(c.morphing.is_monotone());
        prop_assert!((c.morphing.split_at_grid().width().unwrap() - c.upper).abs() <= 1e-12 * c.upper.max(1.0));
        let dense = tk::dense_frechet(&pa, &pb, 50);
        prop_assert!(dense >= c.lower * (1.0 - 1e-12));
        let ap = frechet_approx(&a, &b, 2.0).unwrap();
        prop_assert!(ap.lower <= c.upper * (1.0 + 1e-9) && c.lower <= ap.upper * (1.0 + 1e-9));
        let vs = frechet_exact_via_simplification(&a, &b, &opts()).unwrap();
        prop_assert!((vs.upper - c.upper).abs() <= 1e-9 * c.upper.max(1e-300));
    }

    #[test]
    fn lower_bound_d_is_below_exact(seed in any::<u64>(), n in 8usize..=40, delta in 0.3f64..2.0) {
        let mut r = tk::rng(seed);
        let a = Arc::new(curve(&tk::random_walk(&mut r, n, 1.0)));
        let w = tk::random_walk(&mut r, n, 1.0);
        let b = Arc::new(curve(&tk::perturb(&mut r, &w, 0.2)));
        let (sa, sb) = (greedy_simplify(&a, delta).unwrap(), greedy_simplify(&b, delta).unwrap());
        prop_assume!(!sa.curve.is_degenerate() && !sb.curve.is_degenerate());
        let (_, _, wa) = greedy_morphing(&a, &sa).unwrap();
        let (_, _, wb) = greedy_morphing(&b, &sb).unwrap();
        let lb = frechet_lower_bound_d(&sa.curve, &sb.curve, &wa, &wb, &opts()).unwrap();
        let e = frechet_exact(&a, &b, &opts()).unwrap();
        prop_assert!(lb >= 0.0 && lb <= e.upper * (1.0 + 1e-9), "{} > {}", lb, e.upper);
    }

    #[test]
    fn slack_is_nonnegative(seed in any::<u64>()) {
        let mut r = tk::rng(seed);
        let a = curve(&tk::random_curve(&mut r, 8, 2, 10.0));
        let b = curve(&tk::random_curve(&mut r, 9, 2, 10.0));
        let c = frechet_exact(&a, &b, &opts()).unwrap();
        let lb = c.lower * r.gen_range(0.5..1.5);
        let s = SlackTable::from_morphing(&c.morphing, lb).unwrap();
        prop_assert_eq!((s.a.len(), s.b.len()), (8, 9));
        prop_assert!(s.a.iter().chain(&s.b).all(|&v| v >= 0.0 && v <= lb.max(0.0)));
        // The first vertices are matched to each other, among others.
        let d0 = dist(&a.point(0), &b.point(0)).unwrap();
        prop_assert!(s.a[0] <= (lb - d0).max(0.0) + 1e-12);
    }
}

#[test]
fn decide_matches_exact() {
    let mut r = tk::rng(21);
    for _ in 0..300 {
        let (n, m) = (r.gen_range(2..=15), r.gen_range(2..=15));
        let a = curve(&tk::random_walk(&mut r, n, 1.0));
        let b = curve(&tk::random_walk(&mut r, m, 1.0));
        let e = frechet_exact(&a, &b, &opts()).unwrap().upper;
        let thr = e * r.gen_range(0.5..1.5);
        let v = decide(&a, &b, thr).unwrap();
        assert_eq!(v == Verdict::Below, thr >= e, "thr {thr} exact {e}");
    }
    let a = curve2(&[(0.0, 0.0), (1.0, 0.0)]);
    let b = curve2(&[(0.0, 1.0), (1.0, 1.0)]);
    assert_eq!(decide(&a, &b, 0.0).unwrap(), Verdict::Above);
    assert_eq!(decide(&a, &b, 1.0).unwrap(), Verdict::Below);
    assert_eq!(decide(&a, &b, 1e9).unwrap(), Verdict::Below);
}
