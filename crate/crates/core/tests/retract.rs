use frechet_core::retract::{node_weighted_search, SearchOutcome};
use frechet_core::*;
use frechet_testkit::{self as tk, Dag};
use proptest::prelude::*;
use rand::Rng;

struct G<'a>(&'a Dag);

impl ImplicitGraph for G<'_> {
    type Node = usize;
    fn start(&self) -> usize {
        0
    }
    fn is_target(&self, n: usize) -> bool {
        n == self.0.n - 1
    }
    fn successors(&self, n: usize, out: &mut Vec<(usize, f64)>) {
        out.extend(self.0.out(n));
    }
}

struct Nw<'a> {
    dag: &'a Dag,
    h: Vec<f64>,
}

impl NodeWeightedGraph for Nw<'_> {
    type Node = usize;
    fn start(&self) -> usize {
        0
    }
    fn is_target(&self, n: usize) -> bool {
        n == self.dag.n - 1
    }
    fn successors(&self, n: usize, out: &mut Vec<usize>) {
        out.extend(self.dag.out(n).map(|e| e.0));
    }
    fn weight(&self, n: usize) -> f64 {
        self.h[n]
    }
}

// Minimax closure over all node pairs.
fn minimax(g: &Dag) -> f64 {
    let n = g.n;
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for &(u, v, w) in &g.edges {
        d[u][v] = w;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k].max(d[k][j]));
            }
        }
    }
    d[0][n - 1]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_weighted_matches_oracle(seed in any::<u64>(), n in 2usize..=9, p in 0.2f64..0.8) {
        let mut r = tk::rng(seed);
        let g = Dag::random(&mut r, n, p);
        let oracle = tk::retractable_oracle(&g, 0, n - 1);
        match retractable_path(&G(&g)) {
            Ok(res) => {
                let (path, value) = oracle.expect("oracle finds a path too");
                prop_assert_eq!(&res.path, &path);
                prop_assert_eq!(res.value, value);
                prop_assert_eq!(res.value, minimax(&g));
                prop_assert!(res.explored <= n);
            }
            Err(Error::NotReachable) => prop_assert!(oracle.is_none()),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn node_weighted_matches_oracle(seed in any::<u64>(), n in 2usize..=9) {
        let mut r = tk::rng(seed);
        let g = Dag::random(&mut r, n, 0.5);
        let h: Vec<f64> = (0..n).map(|_| r.gen::<f64>()).collect();
        let succ = |u: usize| g.out(u).map(|e| e.0).collect::<Vec<_>>();
        let oracle = tk::node_weighted_oracle(&succ, &|u| h[u], 0, n - 1);
        match retractable_path_with_node_weights(&Nw { dag: &g, h: h.clone() }) {
            Ok(res) => {
                let (path, value) = oracle.expect("oracle finds a path too");
                prop_assert_eq!(&res.path, &path);
                prop_assert_eq!(res.value, value);
            }
            Err(Error::NotReachable) => prop_assert!(oracle.is_none()),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn grid_node_weights_match_oracle(seed in any::<u64>(), n in 1usize..=6, m in 1usize..=6) {
        let mut r = tk::rng(seed);
        let h: Vec<f64> = (0..n * m).map(|_| r.gen::<f64>()).collect();
        let succ = tk::grid_succ(n, m);
        let (path, value) = tk::node_weighted_oracle(&succ, &|u| h[u], 0, n * m - 1).unwrap();
        let mut edges = Vec::new();
        for u in 0..n * m {
            for v in succ(u) {
                edges.push((u, v, 0.0));
            }
        }
        let dag = Dag { n: n * m, edges };
        let res = retractable_path_with_node_weights(&Nw { dag: &dag, h }).unwrap();
        prop_assert_eq!(res.path, path);
        prop_assert_eq!(res.value, value);
    }
}

#[test]
fn spec_diamond_and_single_edge() {
    let g = Dag { n: 4, edges: vec![(0, 1, 5.0), (1, 3, 1.0), (0, 2, 3.0), (2, 3, 4.0)] };
    let r = retractable_path(&G(&g)).unwrap();
    assert_eq!((r.path, r.value), (vec![0, 2, 3], 4.0));
    let g = Dag { n: 2, edges: vec![(0, 1, 7.0)] };
    let r = retractable_path(&G(&g)).unwrap();
    assert_eq!((r.path, r.value), (vec![0, 1], 7.0));
}

#[test]
fn node_weight_chain_and_flat() {
    let dag = Dag { n: 3, edges: vec![(0, 1, 0.0), (1, 2, 0.0)] };
    let r = retractable_path_with_node_weights(&Nw { dag: &dag, h: vec![0.0, 5.0, 2.0] }).unwrap();
    assert_eq!(r.value, 5.0);
    let dag = Dag { n: 4, edges: vec![(0, 1, 0.0), (0, 2, 0.0), (1, 3, 0.0), (2, 3, 0.0)] };
    let r = retractable_path_with_node_weights(&Nw { dag: &dag, h: vec![3.0; 4] }).unwrap();
    assert_eq!(r.value, 3.0);
}

#[test]
fn cutoff_reports_exceeded() {
    let dag = Dag { n: 3, edges: vec![(0, 1, 0.0), (1, 2, 0.0)] };
    let g = Nw { dag: &dag, h: vec![0.0, 5.0, 2.0] };
    assert!(matches!(node_weighted_search(&g, Some(4.0)).unwrap(), SearchOutcome::Exceeded { .. }));
    assert!(matches!(node_weighted_search(&g, Some(5.0)).unwrap(), SearchOutcome::Found(_)));
}
