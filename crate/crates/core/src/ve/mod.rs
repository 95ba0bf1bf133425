//! The vertex-edge (VE) graph of two curves and the VE-Fréchet distance.
//!
//! Every grid edge of the free-space diagram carries one portal: the point
//! of minimum elevation on it, i.e. the nearest point of an edge of one curve
//! to a vertex of the other. Inside a cell, each incoming portal (bottom,
//! left) is connected to each outgoing portal (top, right). Portals on the
//! grid edges incident to the two corners are replaced by the corners.
//!
//! The retractable bottleneck path from the start corner to the end corner
//! gives the VE-Fréchet morphing. It can move backward inside an edge but
//! never back over a vertex, and its width is a lower bound on the Fréchet
//! distance.

mod elevation;

pub use elevation::{
    elevation_gradient, elevation_in_cell, min_lines, portal, Affine, CellElevation,
};

use std::sync::Arc;

use crate::error::Result;
use crate::geometry::{check_pair, dist_slice, nearest_param, Curve};
use crate::morphing::Morphing;
use crate::retract::{node_weighted_search, NodeWeightedGraph, SearchOutcome};

/// A node of the VE graph.
///
/// `Horizontal { i, j }` is the portal of vertex `q_j` on edge `i` of the
/// first curve; `Vertical { i, j }` is the portal of vertex `p_i` on edge `j`
/// of the second curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VeNode {
    Start,
    End,
    Horizontal { i: u32, j: u32 },
    Vertical { i: u32, j: u32 },
}

/// Location and height of a VE node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeInfo {
    /// Arc length on the first curve.
    pub x: f64,
    /// Arc length on the second curve.
    pub y: f64,
    /// Elevation (or offset elevation) at the node.
    pub value: f64,
}

/// Per-edge widths subtracted from the elevation; used for lower bounds
/// computed on simplified curves.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Offsets<'a> {
    pub a: &'a [f64],
    pub b: &'a [f64],
}

fn vertex_offset(w: &[f64], k: usize) -> f64 {
    let left = if k > 0 { w[k - 1] } else { 0.0 };
    let right = if k < w.len() { w[k] } else { 0.0 };
    left.max(right)
}

/// The implicit VE graph of a pair of curves.
#[derive(Debug, Clone, Copy)]
pub struct VeGraph<'a> {
    a: &'a Curve,
    b: &'a Curve,
    offsets: Option<Offsets<'a>>,
}

impl<'a> VeGraph<'a> {
    pub fn new(a: &'a Curve, b: &'a Curve) -> Result<Self> {
        check_pair(a, b)?;
        Ok(VeGraph { a, b, offsets: None })
    }

    pub(crate) fn with_offsets(a: &'a Curve, b: &'a Curve, offsets: Offsets<'a>) -> Result<Self> {
        check_pair(a, b)?;
        debug_assert_eq!(offsets.a.len(), a.edge_count());
        debug_assert_eq!(offsets.b.len(), b.edge_count());
        Ok(VeGraph { a, b, offsets: Some(offsets) })
    }

    /// Number of grid edges of the free-space diagram.
    pub fn grid_edge_count(&self) -> usize {
        let (n, m) = (self.a.len(), self.b.len());
        (n - 1) * m + n * (m - 1)
    }

    fn canon(&self, v: VeNode) -> VeNode {
        let (n, m) = (self.a.len() as u32, self.b.len() as u32);
        match v {
            VeNode::Horizontal { i, j } if i + 2 == n && j + 1 == m => VeNode::End,
            VeNode::Vertical { i, j } if i + 1 == n && j + 2 == m => VeNode::End,
            VeNode::Horizontal { i: 0, j: 0 } | VeNode::Vertical { i: 0, j: 0 } => VeNode::Start,
            v => v,
        }
    }

    /// Successor nodes: the outgoing portals of the cell `node` enters.
    pub fn successor_nodes(&self, node: VeNode, out: &mut Vec<VeNode>) {
        let (n, m) = (self.a.len() as u32, self.b.len() as u32);
        let (ci, cj) = match node {
            VeNode::Start => (0, 0),
            VeNode::End => return,
            VeNode::Horizontal { i, j } | VeNode::Vertical { i, j } => (i, j),
        };
        if ci + 1 >= n || cj + 1 >= m {
            return;
        }
        let top = self.canon(VeNode::Horizontal { i: ci, j: cj + 1 });
        let right = self.canon(VeNode::Vertical { i: ci + 1, j: cj });
        out.push(top);
        if right != top {
            out.push(right);
        }
    }

    fn x_at(&self, i: usize, t: f64) -> f64 {
        let (lo, hi) = (self.a.prefix(i), self.a.prefix(i + 1));
        if t >= 1.0 {
            hi
        } else {
            (lo + t * (hi - lo)).min(hi)
        }
    }

    fn y_at(&self, j: usize, t: f64) -> f64 {
        let (lo, hi) = (self.b.prefix(j), self.b.prefix(j + 1));
        if t >= 1.0 {
            hi
        } else {
            (lo + t * (hi - lo)).min(hi)
        }
    }

    /// Position and height of a node.
    pub fn node_info(&self, node: VeNode) -> NodeInfo {
        let (a, b) = (self.a, self.b);
        let (n, m) = (a.len(), b.len());
        match node {
            VeNode::Start => {
                let mut value = dist_slice(a.vertex(0), b.vertex(0));
                if let Some(o) = self.offsets {
                    value -= o.a[0] + o.b[0];
                }
                NodeInfo { x: 0.0, y: 0.0, value }
            }
            VeNode::End => {
                let mut value = dist_slice(a.vertex(n - 1), b.vertex(m - 1));
                if let Some(o) = self.offsets {
                    value -= o.a[n - 2] + o.b[m - 2];
                }
                NodeInfo { x: a.length(), y: b.length(), value }
            }
            VeNode::Horizontal { i, j } => {
                let (i, j) = (i as usize, j as usize);
                let q = b.vertex(j);
                let (t, d) = nearest_param(q, a.vertex(i), a.vertex(i + 1));
                match self.offsets {
                    None => NodeInfo { x: self.x_at(i, t), y: b.prefix(j), value: d },
                    Some(o) => {
                        let ob = vertex_offset(o.b, j);
                        let (t, value) = min_on_grid_edge(
                            (t, d - o.a[i] - ob),
                            dist_slice(q, a.vertex(i)) - vertex_offset(o.a, i) - ob,
                            dist_slice(q, a.vertex(i + 1)) - vertex_offset(o.a, i + 1) - ob,
                        );
                        NodeInfo { x: self.x_at(i, t), y: b.prefix(j), value }
                    }
                }
            }
            VeNode::Vertical { i, j } => {
                let (i, j) = (i as usize, j as usize);
                let p = a.vertex(i);
                let (t, d) = nearest_param(p, b.vertex(j), b.vertex(j + 1));
                match self.offsets {
                    None => NodeInfo { x: a.prefix(i), y: self.y_at(j, t), value: d },
                    Some(o) => {
                        let oa = vertex_offset(o.a, i);
                        let (t, value) = min_on_grid_edge(
                            (t, d - oa - o.b[j]),
                            dist_slice(p, b.vertex(j)) - oa - vertex_offset(o.b, j),
                            dist_slice(p, b.vertex(j + 1)) - oa - vertex_offset(o.b, j + 1),
                        );
                        NodeInfo { x: a.prefix(i), y: self.y_at(j, t), value }
                    }
                }
            }
        }
    }

    /// Height of a node.
    pub fn elevation(&self, node: VeNode) -> f64 {
        self.node_info(node).value
    }

    pub(crate) fn search(&self, cutoff: Option<f64>) -> Result<SearchOutcome<VeNode>> {
        node_weighted_search(self, cutoff)
    }

    pub(crate) fn path_points(&self, path: &[VeNode]) -> Vec<(f64, f64)> {
        path.iter()
            .map(|&v| {
                let info = self.node_info(v);
                (info.x, info.y)
            })
            .collect()
    }
}

// With offsets, the grid vertices at the two ends of a grid edge carry larger
// offsets than its interior, so the minimum can sit at an end.
fn min_on_grid_edge(interior: (f64, f64), at0: f64, at1: f64) -> (f64, f64) {
    let mut best = interior;
    if at0 < best.1 {
        best = (0.0, at0);
    }
    if at1 < best.1 {
        best = (1.0, at1);
    }
    best
}

impl NodeWeightedGraph for VeGraph<'_> {
    type Node = VeNode;

    fn start(&self) -> VeNode {
        VeNode::Start
    }

    fn is_target(&self, v: VeNode) -> bool {
        v == VeNode::End
    }

    fn successors(&self, v: VeNode, out: &mut Vec<VeNode>) {
        self.successor_nodes(v, out)
    }

    fn weight(&self, v: VeNode) -> f64 {
        self.elevation(v)
    }
}

/// Successors of `node` with edge weights `max(elevation(node), elevation(succ))`.
pub fn ve_successors(node: VeNode, a: &Curve, b: &Curve) -> Result<Vec<(VeNode, f64)>> {
    let g = VeGraph::new(a, b)?;
    let h = g.elevation(node);
    let mut out = Vec::new();
    g.successor_nodes(node, &mut out);
    Ok(out.into_iter().map(|v| (v, h.max(g.elevation(v)))).collect())
}

/// Result of a VE-Fréchet computation.
#[derive(Debug, Clone)]
pub struct VeResult {
    pub distance: f64,
    pub morphing: Morphing,
    pub path: Vec<VeNode>,
    pub explored: usize,
    pub grid_edges: usize,
}

/// VE-Fréchet distance and the retractable VE morphing.
pub fn ve_frechet(a: &Curve, b: &Curve) -> Result<VeResult> {
    let (a, b) = (Arc::new(a.clone()), Arc::new(b.clone()));
    match ve_search(&a, &b, None, None)? {
        Some(r) => Ok(r),
        None => unreachable!("no cutoff given"),
    }
}

/// VE search on shared curves, optionally with width offsets and a cutoff.
/// Returns `None` when the bottleneck exceeds the cutoff.
pub(crate) fn ve_search(
    a: &Arc<Curve>,
    b: &Arc<Curve>,
    offsets: Option<Offsets<'_>>,
    cutoff: Option<f64>,
) -> Result<Option<VeResult>> {
    let g = match offsets {
        Some(o) => VeGraph::with_offsets(a, b, o)?,
        None => VeGraph::new(a, b)?,
    };
    match g.search(cutoff)? {
        SearchOutcome::Exceeded { .. } => Ok(None),
        SearchOutcome::Found(r) => {
            let points = g.path_points(&r.path);
            let morphing = Morphing::new(a.clone(), b.clone(), points)?;
            Ok(Some(VeResult {
                distance: r.value,
                morphing,
                path: r.path,
                explored: r.explored,
                grid_edges: g.grid_edge_count(),
            }))
        }
    }
}
