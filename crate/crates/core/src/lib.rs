//! Fréchet distance between polygonal curves, computed through the
//! vertex-edge (VE) graph of the free-space diagram, retractable bottleneck
//! paths, refinement to monotonicity and curve simplification.
//!
//! The main entry points are [`ve_frechet`] (a lower bound with a possibly
//! non-monotone morphing), [`frechet_exact`] (a certified bracket that closes
//! to the exact distance), [`frechet_approx`], [`decide`], and the sweep
//! distance [`sweep_distance`], an upper bound on continuous dynamic time
//! warping.

pub mod discrete;
pub mod driver;
pub mod error;
pub mod geometry;
pub mod morphing;
pub mod retract;
pub mod simplify;
pub mod sweep;
pub mod ve;

pub use discrete::{discrete_frechet_dp, retractable_discrete_frechet, DiscreteMorphing};
pub use error::{Error, Result};
pub use geometry::{dist, nearest_on_segment, point_at_arclength, Curve, Point, Segment};
pub use morphing::{combine, Morphing};
pub use retract::{retractable_path, retractable_path_with_node_weights, ImplicitGraph, NodeWeightedGraph, PathResult};
pub use ve::{ve_frechet, VeGraph, VeNode, VeResult};
pub use driver::{
    bisector_refine, decide, frechet_approx, frechet_exact, frechet_exact_via_simplification,
    frechet_lower_bound_d, sensitive_simplify, CertificateStatus, DistanceCertificate, ExactOptions,
    Refinement, SlackTable, Verdict,
};
pub use simplify::{
    combined_simplify, comp_profile, delta_simplify, extract, greedy_morphing, greedy_simplify,
    spine_morphing, SimplificationProfile, SimplifiedCurve,
};
pub use sweep::{
    cdtw_lower_bound, edge_price, integral_sqrt_quadratic, split, sweep_distance, warping_cost,
    QuadraticUnderRoot, SweepResult, SWEEP_MAX_ROUNDS,
};
