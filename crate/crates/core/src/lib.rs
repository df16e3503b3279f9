//! Network imbalance: a QoS-parameterized, entropy-based measure of how evenly
//! connection quality is spread over every ordered node pair of a graph.
//!
//! Hop counts from an all-pairs BFS are compressed into a [`HopHistogram`],
//! mapped through a sigmoid lens ([`QoSProfile`]) into per-pair weights, and
//! scored as one minus the normalized Shannon entropy of those weights.
//!
//! The metric layer is generic over the floating-point type ([`Real`]);
//! `f64` aliases are exported for the common case.
//!
//! ```
//! use netimbalance::{generators, imbalance, QoSProfile64};
//!
//! let ring = generators::ring(8).unwrap();
//! let profile = QoSProfile64::new(2.0, 3.0).unwrap();
//! let report = imbalance(&ring, &profile).unwrap();
//! assert!(report.imbalance > 0.0 && report.imbalance < 1.0);
//! ```

pub mod classical;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod imbalance;
pub mod io;
pub mod optimizer;
pub mod paths;
pub mod scalar;

pub use classical::{
    algebraic_connectivity, average_path_length, comparison_report, degree_gini, jain_unfairness,
    mohar_diameter_bound, path_variance, ComparisonReport, LAMBDA2_MAX_NODES,
};
pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub use imbalance::{
    concentrated_limit, imbalance, imbalance_from_histogram, imbalance_gradient,
    mohar_sufficient_h0, phase_diagram, sup_imbalance, weight, weight_gradient, Gradient,
    ImbalanceReport, PhaseDiagram, QoSProfile,
};

pub use optimizer::{evaluate_candidates, greedy_edge_addition, OptimizationResult, RoundTrace};
pub use paths::{all_pairs_histogram, bfs_hops, Diameter, HopHistogram};
pub use scalar::Real;

pub type QoSProfile64 = QoSProfile<f64>;
pub type QoSProfile32 = QoSProfile<f32>;
pub type ImbalanceReport64 = ImbalanceReport<f64>;
pub type ImbalanceReport32 = ImbalanceReport<f32>;
pub type Gradient64 = Gradient<f64>;
pub type PhaseDiagram64 = PhaseDiagram<f64>;
pub type ComparisonReport64 = ComparisonReport<f64>;
pub type OptimizationResult64 = OptimizationResult<f64>;
pub type SweepSpec64 = experiments::SweepSpec<f64>;
pub type SweepResult64 = experiments::SweepResult<f64>;
