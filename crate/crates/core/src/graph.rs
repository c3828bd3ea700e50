//! Graph model: an undirected simple graph per layer, and a multilayer
//! network as a list of named layers over a shared vertex set.
//!
//! Vertices are dense integers in `[0, n)`. Graphs are immutable once built;
//! every construction path normalizes its input (self-loops dropped,
//! duplicate edges collapsed, adjacency stored symmetric and sorted).

use serde::{Deserialize, Serialize};

use crate::error::{MlnError, Result};

pub type VertexId = u32;

/// One layer: an undirected simple graph in CSR form.
///
/// Invariants (established at construction, relied on everywhere):
/// adjacency lists are sorted ascending, contain no duplicates and no
/// self-loops, and are symmetric (`v in adj(u)` iff `u in adj(v)`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerGraph {
    n: usize,
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
}

/// What input normalization removed while building a graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NormalizeStats {
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

impl LayerGraph {
    /// Builds a graph from undirected edge pairs. Order and orientation of
    /// the input pairs are irrelevant; self-loops and repeats are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Self::from_edges_with_stats(n, edges).map(|(g, _)| g)
    }

    /// Same as [`from_edges`](Self::from_edges) but also reports how much
    /// normalization happened, for load statistics.
    pub fn from_edges_with_stats<I>(n: usize, edges: I) -> Result<(Self, NormalizeStats)>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if n > u32::MAX as usize {
            return Err(MlnError::VertexOutOfRange {
                id: n as u64,
                n: u32::MAX as usize,
            });
        }
        let mut stats = NormalizeStats::default();

        // Both directions of every kept edge, then sort + dedup.
        let mut half: Vec<(VertexId, VertexId)> = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(MlnError::VertexOutOfRange {
                    id: u.max(v) as u64,
                    n,
                });
            }
            if u == v {
                stats.self_loops_dropped += 1;
                continue;
            }
            half.push((u, v));
        }
        let mut directed: Vec<(VertexId, VertexId)> = Vec::with_capacity(half.len() * 2);
        for &(u, v) in &half {
            directed.push((u, v));
            directed.push((v, u));
        }
        drop(half);
        directed.sort_unstable();
        let before = directed.len();
        directed.dedup();
        debug_assert_eq!((before - directed.len()) % 2, 0);
        stats.duplicates_collapsed = (before - directed.len()) / 2;

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &directed {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = directed.into_iter().map(|(_, v)| v).collect();

        Ok((
            LayerGraph {
                n,
                offsets,
                neighbors,
            },
            stats,
        ))
    }

    /// Builds directly from adjacency that already satisfies the invariants.
    /// Callers must pass sorted, deduplicated, loop-free, symmetric lists.
    pub(crate) fn from_sorted_adjacency(n: usize, offsets: Vec<usize>, neighbors: Vec<VertexId>) -> Self {
        debug_assert_eq!(offsets.len(), n + 1);
        debug_assert_eq!(*offsets.last().unwrap_or(&0), neighbors.len());
        LayerGraph {
            n,
            offsets,
            neighbors,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, u: VertexId) -> u32 {
        (self.offsets[u as usize + 1] - self.offsets[u as usize]) as u32
    }

    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.neighbors[self.offsets[u as usize]..self.offsets[u as usize + 1]]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Per-vertex degrees as a vector.
    pub fn degrees(&self) -> Vec<u32> {
        (0..self.n).map(|u| self.degree(u as VertexId)).collect()
    }

    /// Undirected edges in canonical order: `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n as VertexId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }
}

/// A set of layers over one shared vertex set `[0, n)`.
#[derive(Debug, Clone)]
pub struct MultilayerNetwork {
    n: usize,
    layers: Vec<(String, LayerGraph)>,
}

impl MultilayerNetwork {
    /// Assembles a network from named layers. All layers must agree on `n`
    /// and names must be unique.
    pub fn new(layers: Vec<(String, LayerGraph)>) -> Result<Self> {
        let first = layers.first().ok_or(MlnError::EmptyNetwork)?;
        let n = first.1.n();
        for (name, g) in &layers {
            if g.n() != n {
                return Err(MlnError::VertexCountMismatch {
                    left: n,
                    right: g.n(),
                });
            }
            if layers.iter().filter(|(other, _)| other == name).count() > 1 {
                return Err(MlnError::DuplicateLayerName(name.clone()));
            }
        }
        Ok(MultilayerNetwork { n, layers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[(String, LayerGraph)] {
        &self.layers
    }

    pub fn layer(&self, idx: usize) -> &LayerGraph {
        &self.layers[idx].1
    }

    pub fn layer_name(&self, idx: usize) -> &str {
        &self.layers[idx].0
    }
}
