//! Configuration-model generator with a normal target degree distribution.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::error::{MlnError, Result};
use crate::graph::{LayerGraph, VertexId};

/// Target degree distribution: per-vertex degrees are drawn from
/// Normal(mean_deg, sd_deg), rounded, and clamped to [0, n-1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalParams {
    pub mean_deg: f64,
    pub sd_deg: f64,
}

impl NormalParams {
    pub fn validate(&self, n: usize) -> Result<()> {
        if !self.mean_deg.is_finite() || self.mean_deg < 0.0 {
            return Err(MlnError::InvalidGenSpec(format!(
                "mean degree must be finite and non-negative, got {}",
                self.mean_deg
            )));
        }
        if !self.sd_deg.is_finite() || self.sd_deg < 0.0 {
            return Err(MlnError::InvalidGenSpec(format!(
                "degree standard deviation must be finite and non-negative, got {}",
                self.sd_deg
            )));
        }
        if n > 0 && self.mean_deg > (n - 1) as f64 {
            return Err(MlnError::InvalidGenSpec(format!(
                "mean degree {} exceeds n-1 = {}",
                self.mean_deg,
                n - 1
            )));
        }
        Ok(())
    }
}

fn edge_key(u: VertexId, v: VertexId) -> u64 {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    (lo as u64) << 32 | hi as u64
}

fn draw_degrees(n: usize, params: &NormalParams, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let cap = n.saturating_sub(1) as f64;
    if params.sd_deg == 0.0 {
        let d = params.mean_deg.round().clamp(0.0, cap) as usize;
        return vec![d; n];
    }
    let dist = Normal::new(params.mean_deg, params.sd_deg).expect("validated params");
    (0..n)
        .map(|_| dist.sample(rng).round().clamp(0.0, cap) as usize)
        .collect()
}

/// Generates a simple undirected graph whose degrees approximate the target
/// distribution via stub pairing plus local edge-swap repair.
///
/// The pairing can leave self-loops and duplicate stubs; those are repaired
/// by swapping endpoints with randomly chosen existing edges, which keeps
/// every vertex degree exactly as drawn. Sequences the repair cannot satisfy
/// within a bounded number of swap attempts are rejected. Deterministic per
/// seed.
pub fn generate_normal(n: usize, params: &NormalParams, seed: u64) -> Result<LayerGraph> {
    params.validate(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degrees = draw_degrees(n, params, &mut rng);

    // Stub pairing needs an even degree sum. Nudge one vertex by 1; which
    // vertex is chosen is part of the deterministic output.
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        if let Some(d) = degrees.iter_mut().find(|d| **d < n.saturating_sub(1)) {
            *d += 1;
        } else if let Some(d) = degrees.iter_mut().find(|d| **d > 0) {
            *d -= 1;
        }
    }

    let mut stubs: Vec<VertexId> = Vec::with_capacity(degrees.iter().sum());
    for (u, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(u as VertexId, d));
    }
    stubs.shuffle(&mut rng);

    let mut seen: HashSet<u64> = HashSet::with_capacity(stubs.len() / 2 * 2);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(stubs.len() / 2);
    let mut pending: Vec<(VertexId, VertexId)> = Vec::new();
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0], pair[1]);
        if u != v && seen.insert(edge_key(u, v)) {
            edges.push((u, v));
        } else {
            pending.push((u, v));
        }
    }

    // Repair each bad pair by splicing it with an existing edge (a, b):
    // replace {a, b} with {u, a} and {v, b} (or the crossed variant). Both
    // rewirings preserve all four degrees.
    let budget = 200 * pending.len() as u64 + 20_000;
    let mut attempts: u64 = 0;
    while let Some((u, v)) = pending.pop() {
        let mut placed = false;
        while !placed {
            attempts += 1;
            if attempts > budget {
                return Err(MlnError::NonGraphicalSequence);
            }
            if edges.is_empty() {
                return Err(MlnError::NonGraphicalSequence);
            }
            let idx = rng.gen_range(0..edges.len());
            let (a, b) = edges[idx];
            for (x, y) in [(a, b), (b, a)] {
                let e1 = (u, x);
                let e2 = (v, y);
                if e1.0 == e1.1 || e2.0 == e2.1 {
                    continue;
                }
                let k1 = edge_key(e1.0, e1.1);
                let k2 = edge_key(e2.0, e2.1);
                if k1 == k2 || seen.contains(&k1) || seen.contains(&k2) {
                    continue;
                }
                seen.remove(&edge_key(a, b));
                edges.swap_remove(idx);
                seen.insert(k1);
                seen.insert(k2);
                edges.push(e1);
                edges.push(e2);
                placed = true;
                break;
            }
        }
    }

    LayerGraph::from_edges(n, edges)
}
