//! Centrality analysis for two-layer networks with a decoupled pipeline.
//!
//! The crate is organized around a two-phase workflow:
//!
//! 1. **Per-layer analysis** ([`analyze`]) walks each layer independently and
//!    produces a compact [`summary::LayerSummary`]. This phase touches raw
//!    adjacency and is the only phase that does.
//! 2. **Composition** ([`compose`]) estimates centrality of the aggregated
//!    network from layer summaries alone. The function signatures accept only
//!    summary types, so composition provably never re-reads the layers.
//!
//! Everything needed to evaluate that pipeline lives alongside it: explicit
//! aggregation and ground truth ([`aggregate`]), an independent dense-matrix
//! oracle for cross-checking ([`oracle`]), set-overlap metrics
//! ([`metrics`]), seeded graph generators and a benchmark-suite builder
//! ([`gen`]), and edge-list I/O ([`io`]).

pub mod aggregate;
pub mod analyze;
pub mod compose;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod oracle;
pub(crate) mod sets;
pub mod summary;

pub use aggregate::{
    aggregate, ground_truth_cc_nodes, ground_truth_degree_hubs, BoolOp, GroundTruthCloseness,
    GroundTruthDegree,
};
pub use analyze::{analyze_closeness, analyze_degree, analyze_layers, AnalysisKind};
pub use compose::{
    cc1, cc2, dc_a1, dc_a2, dc_a2_with_info, dc_p1, dc_p2, naive_and_cc, naive_or, Cc1Config,
    CcSelection, ClosenessComposition, ClosenessMethod, DegreeComposition, DegreeMethod,
};
pub use error::{MlnError, Result};
pub use graph::{LayerGraph, MultilayerNetwork, VertexId};
pub use metrics::{compare_sets, relative_gain, summarize, SetComparison, SuiteSummary};
pub use oracle::{brute_force_check, DiscrepancyReport, SetDiff, DEFAULT_BRUTE_FORCE_BOUND};
pub use summary::{
    read_psi_artifact, write_psi_artifact, ClosenessSummary, DegreeSummary, LayerSummary,
    NeighborhoodTable, RetentionPolicy, ARTIFACT_VERSION,
};
