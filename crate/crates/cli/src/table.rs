//! Result-row shapes shared by the `run` writer and the `report` reader.

use std::collections::BTreeMap;

use mln_core::{SetComparison, SuiteSummary};
use serde::Serialize;

/// Column order of every results CSV this tool writes and reads. Timing
/// columns are milliseconds; speedup is `gt_time / (psi_time_max + theta_time)`
/// over exactly the values stored in the row.
pub const CSV_HEADER: [&str; 13] = [
    "dataset_id",
    "n",
    "edges_l1",
    "edges_l2",
    "edges_agg",
    "method",
    "jaccard",
    "precision",
    "recall",
    "psi_time_max",
    "theta_time",
    "gt_time",
    "speedup",
];

/// One evaluated (dataset, method) pair. Optional fields are absent when
/// ground truth was skipped by --gt-cap.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub dataset_id: String,
    pub n: usize,
    pub edges_l1: usize,
    pub edges_l2: usize,
    pub edges_agg: Option<usize>,
    pub method: String,
    pub comparison: Option<SetComparison>,
    pub psi_time_per_layer_ms: Vec<f64>,
    pub psi_time_max_ms: f64,
    pub theta_time_ms: f64,
    pub gt_time_ms: Option<f64>,
    pub speedup: Option<f64>,
}

impl ResultRow {
    pub fn csv_record(&self) -> Vec<String> {
        fn opt(v: Option<impl std::fmt::Display>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        let (jaccard, precision, recall) = match &self.comparison {
            Some(c) => (
                c.jaccard.to_string(),
                c.precision.to_string(),
                c.recall.to_string(),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        vec![
            self.dataset_id.clone(),
            self.n.to_string(),
            self.edges_l1.to_string(),
            self.edges_l2.to_string(),
            opt(self.edges_agg),
            self.method.clone(),
            jaccard,
            precision,
            recall,
            self.psi_time_max_ms.to_string(),
            self.theta_time_ms.to_string(),
            opt(self.gt_time_ms),
            opt(self.speedup),
        ]
    }
}

/// The JSON summary `run` writes next to its CSV.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub kind: String,
    pub seed: u64,
    /// Per-method mean scores over the rows that have accuracy data.
    pub suite: BTreeMap<String, SuiteSummary>,
    pub rows: Vec<ResultRow>,
}
