//! Per-layer analysis: the expensive pass over each layer graph that
//! produces a [`DegreeSummary`] or [`ClosenessSummary`]. Everything
//! downstream works from these summaries alone.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{LayerGraph, MultilayerNetwork, VertexId};
use crate::summary::{
    ClosenessSummary, DegreeSummary, LayerSummary, NeighborhoodTable, RetentionPolicy,
};

/// Which analysis to run over a layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalysisKind {
    Degree,
    Closeness,
}

impl std::fmt::Display for AnalysisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnalysisKind::Degree => write!(f, "degree"),
            AnalysisKind::Closeness => write!(f, "closeness"),
        }
    }
}

/// Vertices whose value is at or above the average degree, by the exact
/// integer comparison `n * deg(u) >= sum(deg)`. Ties are included.
pub(crate) fn hubs_from_degrees(deg: &[u32]) -> (Vec<VertexId>, u64) {
    let n = deg.len() as u64;
    let sum: u64 = deg.iter().map(|&d| d as u64).sum();
    let hubs = deg
        .iter()
        .enumerate()
        .filter(|&(_, &d)| n * d as u64 >= sum)
        .map(|(u, _)| u as VertexId)
        .collect();
    (hubs, sum)
}

/// Vertices whose value is at or above the mean. The mean is a plain
/// sequential sum over `values` so results are identical regardless of how
/// the values themselves were produced.
pub(crate) fn at_or_above_mean(values: &[f64]) -> Vec<VertexId> {
    if values.is_empty() {
        return Vec::new();
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v >= mean)
        .map(|(u, _)| u as VertexId)
        .collect()
}

/// The seeded fraction-retention subset: the first `ceil(fraction * n)`
/// entries of a seeded permutation of `[0, n)`, sorted. Same seed implies
/// nested subsets as the fraction grows.
pub(crate) fn retained_subset(n: usize, fraction: f64, seed: u64) -> Vec<VertexId> {
    assert!(
        (0.0..=1.0).contains(&fraction),
        "retention fraction must be in [0, 1], got {fraction}"
    );
    let keep = ((fraction * n as f64).ceil() as usize).min(n);
    let mut perm: Vec<VertexId> = (0..n as VertexId).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    perm.shuffle(&mut rng);
    let mut subset = perm[..keep].to_vec();
    subset.sort_unstable();
    subset
}

/// Degree analysis of one layer. Runs in one pass over the adjacency;
/// retention controls how much of it the summary carries along.
pub fn analyze_degree(g: &LayerGraph, layer_name: &str, retain: RetentionPolicy) -> DegreeSummary {
    let start = Instant::now();
    let n = g.n();
    let deg = g.degrees();
    let (hubs, deg_sum) = hubs_from_degrees(&deg);
    let avg_deg = if n == 0 { 0.0 } else { deg_sum as f64 / n as f64 };

    let hub_neighborhoods = match retain {
        RetentionPolicy::HubsOnly | RetentionPolicy::All => {
            Some(NeighborhoodTable::from_graph(g, hubs.clone()))
        }
        _ => None,
    };
    let full_neighborhoods = match retain {
        RetentionPolicy::Fraction { fraction, seed } => Some(NeighborhoodTable::from_graph(
            g,
            retained_subset(n, fraction, seed),
        )),
        RetentionPolicy::All => Some(NeighborhoodTable::from_graph(
            g,
            (0..n as VertexId).collect(),
        )),
        _ => None,
    };

    DegreeSummary {
        layer_name: layer_name.to_string(),
        n,
        deg,
        deg_sum,
        avg_deg,
        hubs,
        retention: retain,
        hub_neighborhoods,
        full_neighborhoods,
        psi_time: start.elapsed(),
    }
}

/// Per-source BFS scratch. `dist` entries are only ever reset for vertices
/// the last traversal actually reached, so a source costs O(component).
struct BfsScratch {
    dist: Vec<u32>,
    queue: Vec<VertexId>,
}

impl BfsScratch {
    fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![u32::MAX; n],
            queue: Vec::with_capacity(n),
        }
    }

    /// Returns (sum of finite distances from `s`, number of reached vertices
    /// including `s`).
    fn run(&mut self, g: &LayerGraph, s: VertexId) -> (u64, u32) {
        self.queue.clear();
        self.queue.push(s);
        self.dist[s as usize] = 0;
        let mut head = 0;
        let mut finite_sum = 0u64;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            let du = self.dist[u as usize];
            finite_sum += du as u64;
            for &v in g.neighbors(u) {
                if self.dist[v as usize] == u32::MAX {
                    self.dist[v as usize] = du + 1;
                    self.queue.push(v);
                }
            }
        }
        let reached = self.queue.len() as u32;
        for &u in &self.queue {
            self.dist[u as usize] = u32::MAX;
        }
        (finite_sum, reached)
    }
}

/// BFS from every vertex, parallel over sources. Output is positionally
/// indexed by source id, so the result does not depend on scheduling.
fn bfs_all_sources(g: &LayerGraph) -> Vec<(u64, u32)> {
    let n = g.n();
    (0..n as VertexId)
        .into_par_iter()
        .map_init(
            || BfsScratch::new(n),
            |scratch, s| scratch.run(g, s),
        )
        .collect()
}

/// Closeness analysis of one layer: BFS from every vertex.
///
/// `sum_dist` charges each unreachable pair a distance of `n`. `cc_value`
/// weighs each vertex's closeness by its component size, which keeps scores
/// comparable on disconnected graphs.
pub fn analyze_closeness(g: &LayerGraph, layer_name: &str) -> ClosenessSummary {
    let start = Instant::now();
    let n = g.n();
    let deg = g.degrees();
    let per_source = bfs_all_sources(g);

    let mut sum_dist = Vec::with_capacity(n);
    let mut cc_value = Vec::with_capacity(n);
    let mut component_size = Vec::with_capacity(n);
    for &(finite_sum, reached) in &per_source {
        sum_dist.push(finite_sum + (n as u64 - reached as u64) * n as u64);
        component_size.push(reached);
        if reached <= 1 {
            cc_value.push(0.0);
        } else {
            let rm1 = (reached - 1) as f64;
            cc_value.push((rm1 / (n - 1) as f64) * (rm1 / finite_sum as f64));
        }
    }
    let cc_nodes = at_or_above_mean(&cc_value);
    let cc_neighborhoods = NeighborhoodTable::from_graph(g, cc_nodes.clone());

    ClosenessSummary {
        layer_name: layer_name.to_string(),
        n,
        deg,
        sum_dist,
        cc_value,
        component_size,
        cc_nodes,
        cc_neighborhoods,
        psi_time: start.elapsed(),
    }
}

/// Analyzes every layer of the network, layers fanned out across the rayon
/// pool. Summaries come back in layer order, each carrying its own
/// wall-clock analysis time. `retain` only applies to degree analysis.
pub fn analyze_layers(
    mln: &MultilayerNetwork,
    kind: AnalysisKind,
    retain: RetentionPolicy,
) -> Vec<LayerSummary> {
    mln.layers()
        .par_iter()
        .map(|(name, g)| match kind {
            AnalysisKind::Degree => LayerSummary::Degree(analyze_degree(g, name, retain)),
            AnalysisKind::Closeness => LayerSummary::Closeness(analyze_closeness(g, name)),
        })
        .collect()
}
