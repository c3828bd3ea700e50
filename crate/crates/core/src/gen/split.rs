//! Derives two-layer networks from a single base graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{MlnError, Result};
use crate::graph::{LayerGraph, VertexId};

/// How base edges are distributed across the two derived layers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SplitMode {
    /// Every base edge goes to exactly one layer: layer 1 with probability
    /// `p1`, layer 2 otherwise. `p1 + p2` must equal 1; a zero endpoint is
    /// allowed and yields one empty layer.
    Partition { p1: f64, p2: f64 },
    /// Each layer samples the base independently: an edge joins layer i with
    /// probability `p_i`. Layers overlap in expectation; both probabilities
    /// must lie in (0, 1].
    IndependentSample { p1: f64, p2: f64 },
}

impl SplitMode {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SplitMode::Partition { p1, p2 } => {
                if !(p1 >= 0.0 && p2 >= 0.0 && p1.is_finite() && p2.is_finite()) {
                    return Err(MlnError::InvalidGenSpec(
                        "partition probabilities must be non-negative".into(),
                    ));
                }
                if ((p1 + p2) - 1.0).abs() > 1e-9 {
                    return Err(MlnError::InvalidGenSpec(format!(
                        "partition probabilities must sum to 1, got {}",
                        p1 + p2
                    )));
                }
            }
            SplitMode::IndependentSample { p1, p2 } => {
                for p in [p1, p2] {
                    if !(p > 0.0 && p <= 1.0) {
                        return Err(MlnError::InvalidGenSpec(format!(
                            "sampling probabilities must lie in (0, 1], got {p}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Splits `base` into two layers over the same vertex set. Edges are visited
/// in canonical (ascending) order with a fixed number of draws per edge, so
/// the output is deterministic per seed.
pub fn split_layers(
    base: &LayerGraph,
    mode: &SplitMode,
    seed: u64,
) -> Result<(LayerGraph, LayerGraph)> {
    mode.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut l1: Vec<(VertexId, VertexId)> = Vec::new();
    let mut l2: Vec<(VertexId, VertexId)> = Vec::new();
    match *mode {
        SplitMode::Partition { p1, .. } => {
            for (u, v) in base.edges() {
                if rng.gen_bool(p1) {
                    l1.push((u, v));
                } else {
                    l2.push((u, v));
                }
            }
        }
        SplitMode::IndependentSample { p1, p2 } => {
            for (u, v) in base.edges() {
                // two draws per edge regardless of outcome keeps the stream
                // aligned across parameter choices
                let r1: f64 = rng.gen();
                let r2: f64 = rng.gen();
                if r1 < p1 {
                    l1.push((u, v));
                }
                if r2 < p2 {
                    l2.push((u, v));
                }
            }
        }
    }
    let n = base.n();
    Ok((LayerGraph::from_edges(n, l1)?, LayerGraph::from_edges(n, l2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::rmat::{generate_rmat, RmatParams};

    fn base_graph() -> LayerGraph {
        generate_rmat(500, 2000, &RmatParams::default(), 99).unwrap()
    }

    #[test]
    fn partition_covers_base_exactly() {
        let base = base_graph();
        let (l1, l2) = split_layers(&base, &SplitMode::Partition { p1: 0.7, p2: 0.3 }, 1).unwrap();
        assert_eq!(l1.edge_count() + l2.edge_count(), base.edge_count());
        for (u, v) in l1.edges() {
            assert!(base.has_edge(u, v));
            assert!(!l2.has_edge(u, v), "edge ({u}, {v}) in both layers");
        }
        for (u, v) in l2.edges() {
            assert!(base.has_edge(u, v));
        }
        let frac = l1.edge_count() as f64 / base.edge_count() as f64;
        assert!((frac - 0.7).abs() < 0.05, "layer 1 fraction {frac}");
    }

    #[test]
    fn partition_with_unit_probability_gives_base_and_empty() {
        let base = base_graph();
        let (l1, l2) = split_layers(&base, &SplitMode::Partition { p1: 1.0, p2: 0.0 }, 5).unwrap();
        assert_eq!(l1, base);
        assert_eq!(l2.edge_count(), 0);
    }

    #[test]
    fn independent_sample_sizes_match_probabilities() {
        let base = base_graph();
        let mode = SplitMode::IndependentSample { p1: 0.7, p2: 0.3 };
        let (l1, l2) = split_layers(&base, &mode, 2).unwrap();
        let m = base.edge_count() as f64;
        let f1 = l1.edge_count() as f64 / m;
        let f2 = l2.edge_count() as f64 / m;
        // 3 sigma for a binomial proportion with m = 2000
        let s1 = (0.7f64 * 0.3 / m).sqrt();
        let s2 = (0.3f64 * 0.7 / m).sqrt();
        assert!((f1 - 0.7).abs() < 3.0 * s1, "layer 1 fraction {f1}");
        assert!((f2 - 0.3).abs() < 3.0 * s2, "layer 2 fraction {f2}");
        for (u, v) in l1.edges().chain(l2.edges()) {
            assert!(base.has_edge(u, v));
        }
    }

    #[test]
    fn independent_sample_layers_overlap() {
        let base = base_graph();
        let mode = SplitMode::IndependentSample { p1: 0.9, p2: 0.9 };
        let (l1, l2) = split_layers(&base, &mode, 3).unwrap();
        let both = l1.edges().filter(|&(u, v)| l2.has_edge(u, v)).count();
        assert!(both > 0, "expected overlapping edges at p1 = p2 = 0.9");
    }

    #[test]
    fn deterministic_per_seed() {
        let base = base_graph();
        let mode = SplitMode::IndependentSample { p1: 0.5, p2: 0.5 };
        assert_eq!(
            split_layers(&base, &mode, 4).unwrap(),
            split_layers(&base, &mode, 4).unwrap()
        );
        assert_ne!(
            split_layers(&base, &mode, 4).unwrap(),
            split_layers(&base, &mode, 5).unwrap()
        );
    }

    #[test]
    fn mode_validation() {
        assert!(SplitMode::Partition { p1: 0.6, p2: 0.6 }.validate().is_err());
        assert!(SplitMode::Partition { p1: -0.1, p2: 1.1 }.validate().is_err());
        assert!(SplitMode::Partition { p1: 0.0, p2: 1.0 }.validate().is_ok());
        assert!(SplitMode::IndependentSample { p1: 0.0, p2: 0.5 }
            .validate()
            .is_err());
        assert!(SplitMode::IndependentSample { p1: 0.5, p2: 1.5 }
            .validate()
            .is_err());
        assert!(SplitMode::IndependentSample { p1: 1.0, p2: 1.0 }
            .validate()
            .is_ok());
    }
}
