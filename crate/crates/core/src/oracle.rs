//! Brute-force re-derivation of ground truth on a dense adjacency matrix.
//!
//! Deliberately shares no machinery with the CSR path: aggregation is
//! word-wise bit algebra, degrees are popcounts, distances come from
//! Floyd-Warshall. Exists to cross-check the fast pipeline and to audit
//! heuristic output on small inputs.

use crate::analyze::AnalysisKind;
use crate::error::{MlnError, Result};
use crate::graph::{LayerGraph, MultilayerNetwork, VertexId};

pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 5000;

/// Symmetric bit-matrix adjacency.
struct DenseAdj {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl DenseAdj {
    fn from_graph(g: &LayerGraph) -> Self {
        let n = g.n();
        let words_per_row = n.div_ceil(64);
        let mut bits = vec![0u64; n * words_per_row];
        for (u, v) in g.edges() {
            let (u, v) = (u as usize, v as usize);
            bits[u * words_per_row + v / 64] |= 1 << (v % 64);
            bits[v * words_per_row + u / 64] |= 1 << (u % 64);
        }
        DenseAdj {
            n,
            words_per_row,
            bits,
        }
    }

    fn combine(a: &Self, b: &Self, and: bool) -> Self {
        assert_eq!(a.n, b.n);
        let bits = a
            .bits
            .iter()
            .zip(&b.bits)
            .map(|(&x, &y)| if and { x & y } else { x | y })
            .collect();
        DenseAdj {
            n: a.n,
            words_per_row: a.words_per_row,
            bits,
        }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words_per_row..(u + 1) * self.words_per_row]
    }

    fn degree(&self, u: usize) -> u64 {
        self.row(u).iter().map(|w| w.count_ones() as u64).sum()
    }

    /// All-pairs hop counts by Floyd-Warshall. `u32::MAX / 2` marks
    /// "unreachable" and survives one addition without overflow.
    fn floyd_warshall(&self) -> Vec<u32> {
        const INF: u32 = u32::MAX / 2;
        let n = self.n;
        let mut dist = vec![INF; n * n];
        for u in 0..n {
            dist[u * n + u] = 0;
            let row = self.row(u);
            for v in 0..n {
                if row[v / 64] >> (v % 64) & 1 == 1 {
                    dist[u * n + v] = 1;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = dist[i * n + k];
                if dik >= INF {
                    continue;
                }
                for j in 0..n {
                    let through = dik + dist[k * n + j];
                    if through < dist[i * n + j] {
                        dist[i * n + j] = through;
                    }
                }
            }
        }
        dist
    }
}

fn matrix_degree_hubs(adj: &DenseAdj) -> Vec<VertexId> {
    let n = adj.n;
    let deg: Vec<u64> = (0..n).map(|u| adj.degree(u)).collect();
    let sum: u64 = deg.iter().sum();
    (0..n)
        .filter(|&u| n as u64 * deg[u] >= sum)
        .map(|u| u as VertexId)
        .collect()
}

fn matrix_cc_nodes(adj: &DenseAdj) -> Vec<VertexId> {
    const INF: u32 = u32::MAX / 2;
    let n = adj.n;
    let dist = adj.floyd_warshall();
    let mut values = Vec::with_capacity(n);
    for u in 0..n {
        let row = &dist[u * n..(u + 1) * n];
        let reached = row.iter().filter(|&&d| d < INF).count() as u32;
        let finite_sum: u64 = row.iter().filter(|&&d| d < INF).map(|&d| d as u64).sum();
        if reached <= 1 {
            values.push(0.0);
        } else {
            let rm1 = (reached - 1) as f64;
            values.push((rm1 / (n - 1) as f64) * (rm1 / finite_sum as f64));
        }
    }
    let mean = if n == 0 {
        0.0
    } else {
        values.iter().sum::<f64>() / n as f64
    };
    (0..n)
        .filter(|&u| values[u] >= mean)
        .map(|u| u as VertexId)
        .collect()
}

/// Difference between a candidate set and the matrix-derived truth.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SetDiff {
    /// In the truth but not the candidate.
    pub missing: Vec<VertexId>,
    /// In the candidate but not the truth.
    pub extra: Vec<VertexId>,
}

impl SetDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    fn between(truth: &[VertexId], candidate: &[VertexId]) -> Self {
        SetDiff {
            missing: truth
                .iter()
                .copied()
                .filter(|u| candidate.binary_search(u).is_err())
                .collect(),
            extra: candidate
                .iter()
                .copied()
                .filter(|u| truth.binary_search(u).is_err())
                .collect(),
        }
    }
}

/// What [`brute_force_check`] found.
#[derive(Debug, Clone)]
pub struct DiscrepancyReport {
    /// Ground truth recomputed on the dense matrix.
    pub matrix_truth: Vec<VertexId>,
    /// Matrix truth vs the heuristic output under audit.
    pub vs_heuristic: SetDiff,
    /// Matrix truth vs the fast CSR ground-truth pipeline. Anything here is
    /// a bug in one of the two implementations.
    pub vs_fast_path: SetDiff,
}

/// Recomputes ground truth for a two-layer network on a dense matrix and
/// diffs it against both the given heuristic output and the fast pipeline.
/// `heuristic` must be sorted. Memory is quadratic in `n`, hence `bound`.
pub fn brute_force_check(
    mln: &MultilayerNetwork,
    heuristic: &[VertexId],
    kind: AnalysisKind,
    bound: usize,
) -> Result<DiscrepancyReport> {
    if mln.layer_count() != 2 {
        return Err(MlnError::NotTwoLayers(mln.layer_count()));
    }
    if mln.n() > bound {
        return Err(MlnError::BruteForceBound {
            n: mln.n(),
            bound,
        });
    }
    let (x, y) = (mln.layer(0), mln.layer(1));
    let (ax, ay) = (DenseAdj::from_graph(x), DenseAdj::from_graph(y));

    let (matrix_truth, fast) = match kind {
        AnalysisKind::Degree => {
            let truth = matrix_degree_hubs(&DenseAdj::combine(&ax, &ay, false));
            let fast = crate::aggregate::ground_truth_degree_hubs(x, y)?.hubs;
            (truth, fast)
        }
        AnalysisKind::Closeness => {
            let truth = matrix_cc_nodes(&DenseAdj::combine(&ax, &ay, true));
            let fast = crate::aggregate::ground_truth_cc_nodes(x, y)?.summary.cc_nodes;
            (truth, fast)
        }
    };

    Ok(DiscrepancyReport {
        vs_heuristic: SetDiff::between(&matrix_truth, heuristic),
        vs_fast_path: SetDiff::between(&matrix_truth, &fast),
        matrix_truth,
    })
}
