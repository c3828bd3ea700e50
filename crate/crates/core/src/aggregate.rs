//! Boolean aggregation of two layers and the exact ground-truth pipeline
//! that the composition heuristics are judged against.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::analyze::{analyze_closeness, hubs_from_degrees};
use crate::error::{MlnError, Result};
use crate::graph::{LayerGraph, VertexId};
use crate::summary::ClosenessSummary;

/// Edge-set combinator for two layers over the same vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoolOp {
    Or,
    And,
}

/// Combines two layers edge-wise: `Or` keeps an edge present in either
/// layer, `And` keeps an edge present in both. Linear merge over the sorted
/// adjacency lists; no hashing.
pub fn aggregate(x: &LayerGraph, y: &LayerGraph, op: BoolOp) -> Result<LayerGraph> {
    if x.n() != y.n() {
        return Err(MlnError::VertexCountMismatch {
            left: x.n(),
            right: y.n(),
        });
    }
    let n = x.n();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0usize);
    let mut neighbors = Vec::with_capacity(match op {
        BoolOp::Or => x.edge_count().max(y.edge_count()) * 2,
        BoolOp::And => x.edge_count().min(y.edge_count()),
    });
    for u in 0..n as VertexId {
        let (a, b) = (x.neighbors(u), y.neighbors(u));
        let (mut i, mut j) = (0, 0);
        match op {
            BoolOp::Or => {
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        std::cmp::Ordering::Less => {
                            neighbors.push(a[i]);
                            i += 1;
                        }
                        std::cmp::Ordering::Greater => {
                            neighbors.push(b[j]);
                            j += 1;
                        }
                        std::cmp::Ordering::Equal => {
                            neighbors.push(a[i]);
                            i += 1;
                            j += 1;
                        }
                    }
                }
                neighbors.extend_from_slice(&a[i..]);
                neighbors.extend_from_slice(&b[j..]);
            }
            BoolOp::And => {
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            neighbors.push(a[i]);
                            i += 1;
                            j += 1;
                        }
                    }
                }
            }
        }
        offsets.push(neighbors.len());
    }
    Ok(LayerGraph::from_sorted_adjacency(n, offsets, neighbors))
}

/// Exact degree-hub baseline: OR-aggregate, then hubs of the combined graph.
#[derive(Debug, Clone)]
pub struct GroundTruthDegree {
    pub graph: LayerGraph,
    pub hubs: Vec<VertexId>,
    pub avg_deg: f64,
    /// Wall-clock for aggregation plus hub extraction.
    pub elapsed: Duration,
}

pub fn ground_truth_degree_hubs(x: &LayerGraph, y: &LayerGraph) -> Result<GroundTruthDegree> {
    let start = Instant::now();
    let graph = aggregate(x, y, BoolOp::Or)?;
    let deg = graph.degrees();
    let (hubs, deg_sum) = hubs_from_degrees(&deg);
    let elapsed = start.elapsed();
    let n = graph.n();
    Ok(GroundTruthDegree {
        avg_deg: if n == 0 { 0.0 } else { deg_sum as f64 / n as f64 },
        graph,
        hubs,
        elapsed,
    })
}

/// Exact closeness baseline: AND-aggregate, then the full closeness analysis
/// of the combined graph. `summary.cc_nodes` is the ground-truth set.
#[derive(Debug, Clone)]
pub struct GroundTruthCloseness {
    pub graph: LayerGraph,
    pub summary: ClosenessSummary,
    /// Wall-clock for aggregation plus closeness extraction.
    pub elapsed: Duration,
}

pub fn ground_truth_cc_nodes(x: &LayerGraph, y: &LayerGraph) -> Result<GroundTruthCloseness> {
    let start = Instant::now();
    let graph = aggregate(x, y, BoolOp::And)?;
    let summary = analyze_closeness(&graph, "and");
    let elapsed = start.elapsed();
    Ok(GroundTruthCloseness {
        graph,
        summary,
        elapsed,
    })
}
