//! Graph alignment by Ricci Matrix Comparison (RMC) and Degree Matrix
//! Comparison (DMC).
//!
//! Nodes are described by the sorted curvatures (or degrees) of their
//! neighbors, and two graphs are aligned by solving the assignment problem
//! between those descriptions. The crate also carries the torus generators,
//! line-graph transform and sampling primitives used by the experiments.

pub mod alignment;
pub mod curvature;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod linegraph;
pub mod sampling;
pub mod spectral;
pub mod tessellation;

pub use alignment::{
    align, common_max_degree, cost_matrix, degree_matrix, hungarian, ricci_matrix, score_alignment,
    Assignment, CostMatrix, SignatureMatrix, SignatureMode,
};
pub use curvature::{curvature_distribution, node_curvature, CurvatureMap};
pub use error::{Error, Result};
pub use experiments::{ExperimentConfig, ExperimentReport, ReportFormat};
pub use graph::{Graph, NodePair};
pub use linegraph::{line_graph, LineGraphResult};
pub use sampling::RngHandle;
