//! Retractable bottleneck paths on implicitly defined graphs.
//!
//! The search is Prim-like: it repeatedly handles the cheapest edge leaving
//! the visited set (lazy insertion, stale entries skipped on pop) and stops
//! the moment the target is popped. The tree it builds consists of
//! retractable paths, so the path to the target is the retractable path.
//!
//! For node-weighted graphs (the free-space grids used by the discrete and
//! vertex-edge distances) every node `v` is thought of as split into
//! `v_in -> v_out` carrying the weight of `v`, with the original edges
//! becoming free connectors `u_out -> v_in`. The bottleneck of a path is the
//! maximum node weight on it, which is the maximum of the edge weights
//! `max(h(u), h(v))`; the split form decides between equally heavy edges in
//! the way the recursive definition of retractable paths requires.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Graph given by a start node, a target predicate and a successor function.
pub trait ImplicitGraph {
    type Node: Copy + Eq + Hash + Ord;
    fn start(&self) -> Self::Node;
    fn is_target(&self, node: Self::Node) -> bool;
    /// Appends `(successor, edge weight)` pairs of `node` to `out`.
    fn successors(&self, node: Self::Node, out: &mut Vec<(Self::Node, f64)>);
}

/// Graph whose weights live on the nodes.
pub trait NodeWeightedGraph {
    type Node: Copy + Eq + Hash + Ord;
    fn start(&self) -> Self::Node;
    fn is_target(&self, node: Self::Node) -> bool;
    fn successors(&self, node: Self::Node, out: &mut Vec<Self::Node>);
    fn weight(&self, node: Self::Node) -> f64;
}

/// A path from the start to a target node.
#[derive(Debug, Clone, PartialEq)]
pub struct PathResult<N> {
    pub path: Vec<N>,
    /// Bottleneck (or total cost for [`shortest_path`]) of the path.
    pub value: f64,
    /// Number of distinct nodes popped from the priority queue.
    pub explored: usize,
}

/// Outcome of a node-weighted search that may be cut off early.
#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome<N> {
    Found(PathResult<N>),
    /// Every remaining candidate is heavier than the cutoff.
    Exceeded { explored: usize },
}

#[derive(Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

// Min-heap entry ordered by (weight, node, parent).
#[derive(PartialEq, Eq)]
struct Entry<N> {
    w: Key,
    node: N,
    parent: Option<N>,
}

impl<N: Ord> Ord for Entry<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        (other.w, &other.node, &other.parent).cmp(&(self.w, &self.node, &self.parent))
    }
}

impl<N: Ord> PartialOrd for Entry<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_weight(w: f64) -> Result<f64> {
    if w.is_nan() {
        Err(Error::InvalidParameter("NaN edge weight".into()))
    } else {
        Ok(w)
    }
}

fn trace<N: Copy + Eq + Hash>(parent: &FxHashMap<N, Option<N>>, end: N) -> Vec<N> {
    let mut path = vec![end];
    let mut cur = end;
    while let Some(Some(p)) = parent.get(&cur) {
        path.push(*p);
        cur = *p;
    }
    path.reverse();
    path
}

/// Retractable path from the start to the first target popped.
///
/// `value` is the largest edge weight on the path. Ties are broken
/// lexicographically on `(weight, node, parent)`.
pub fn retractable_path<G: ImplicitGraph>(g: &G) -> Result<PathResult<G::Node>> {
    let mut parent: FxHashMap<G::Node, Option<G::Node>> = FxHashMap::default();
    let mut weight_in: FxHashMap<G::Node, f64> = FxHashMap::default();
    let mut heap = BinaryHeap::new();
    let mut succ = Vec::new();
    heap.push(Entry { w: Key(f64::NEG_INFINITY), node: g.start(), parent: None });
    while let Some(Entry { w, node, parent: p }) = heap.pop() {
        if parent.contains_key(&node) {
            continue;
        }
        parent.insert(node, p);
        weight_in.insert(node, w.0);
        if g.is_target(node) {
            let path = trace(&parent, node);
            let value = path[1..].iter().map(|n| weight_in[n]).fold(f64::NEG_INFINITY, f64::max);
            return Ok(PathResult { path, value, explored: parent.len() });
        }
        succ.clear();
        g.successors(node, &mut succ);
        for &(v, w) in &succ {
            if !parent.contains_key(&v) {
                heap.push(Entry { w: Key(check_weight(w)?), node: v, parent: Some(node) });
            }
        }
    }
    Err(Error::NotReachable)
}

/// Retractable path in a node-weighted graph; `value` is the largest node
/// weight on the path, endpoints included.
pub fn retractable_path_with_node_weights<G: NodeWeightedGraph>(
    g: &G,
) -> Result<PathResult<G::Node>> {
    match node_weighted_search(g, None)? {
        SearchOutcome::Found(r) => Ok(r),
        SearchOutcome::Exceeded { .. } => Err(Error::NotReachable),
    }
}

/// Node-weighted retractable search that gives up once the bottleneck is
/// known to exceed `cutoff`.
pub fn node_weighted_search<G: NodeWeightedGraph>(
    g: &G,
    cutoff: Option<f64>,
) -> Result<SearchOutcome<G::Node>> {
    let limit = cutoff.unwrap_or(f64::INFINITY);
    let s = g.start();
    let hs = check_weight(g.weight(s))?;
    if hs > limit {
        return Ok(SearchOutcome::Exceeded { explored: 0 });
    }
    // parent map doubles as the "entered" set; weights cached alongside.
    let mut parent: FxHashMap<G::Node, Option<G::Node>> = FxHashMap::default();
    let mut weight: FxHashMap<G::Node, f64> = FxHashMap::default();
    parent.insert(s, None);
    weight.insert(s, hs);
    let mut heap = BinaryHeap::new();
    heap.push(Entry { w: Key(hs), node: s, parent: None });
    let mut explored = 0;
    let mut succ = Vec::new();
    if g.is_target(s) {
        return Ok(SearchOutcome::Found(PathResult { path: vec![s], value: hs, explored: 1 }));
    }
    while let Some(Entry { w, node, .. }) = heap.pop() {
        if w.0 > limit {
            return Ok(SearchOutcome::Exceeded { explored });
        }
        explored += 1;
        succ.clear();
        g.successors(node, &mut succ);
        for &v in &succ {
            if parent.contains_key(&v) {
                continue;
            }
            let h = check_weight(g.weight(v))?;
            parent.insert(v, Some(node));
            weight.insert(v, h);
            if g.is_target(v) {
                let path = trace(&parent, v);
                let value = path.iter().map(|n| weight[n]).fold(f64::NEG_INFINITY, f64::max);
                if value > limit {
                    return Ok(SearchOutcome::Exceeded { explored: explored + 1 });
                }
                return Ok(SearchOutcome::Found(PathResult { path, value, explored: explored + 1 }));
            }
            heap.push(Entry { w: Key(h), node: v, parent: None });
        }
    }
    Err(Error::NotReachable)
}

/// Minimum-cost path under additive, non-negative edge weights.
pub fn shortest_path<G: ImplicitGraph>(g: &G) -> Result<PathResult<G::Node>> {
    let mut parent: FxHashMap<G::Node, Option<G::Node>> = FxHashMap::default();
    let mut best: FxHashMap<G::Node, f64> = FxHashMap::default();
    let mut heap = BinaryHeap::new();
    let s = g.start();
    best.insert(s, 0.0);
    heap.push(Entry { w: Key(0.0), node: s, parent: None });
    let mut succ = Vec::new();
    while let Some(Entry { w, node, parent: p }) = heap.pop() {
        if parent.contains_key(&node) || w.0 > best[&node] {
            continue;
        }
        parent.insert(node, p);
        if g.is_target(node) {
            return Ok(PathResult { path: trace(&parent, node), value: w.0, explored: parent.len() });
        }
        succ.clear();
        g.successors(node, &mut succ);
        for &(v, c) in &succ {
            let c = check_weight(c)?;
            if c < 0.0 {
                return Err(Error::InvalidParameter("negative edge cost".into()));
            }
            if parent.contains_key(&v) {
                continue;
            }
            let d = w.0 + c;
            if best.get(&v).is_none_or(|&b| d < b) {
                best.insert(v, d);
                heap.push(Entry { w: Key(d), node: v, parent: Some(node) });
            }
        }
    }
    Err(Error::NotReachable)
}
