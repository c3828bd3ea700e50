//! Per-layer analysis summaries.
//!
//! A summary is everything the composition stage is allowed to see: the
//! layer graphs themselves stay behind the analysis functions. Summaries
//! serialize to a small versioned JSON artifact so analysis and composition
//! can run as separate processes.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{MlnError, Result};
use crate::graph::{LayerGraph, VertexId};

/// Adjacency retained for a subset of vertices, in compact sorted form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodTable {
    ids: Vec<VertexId>,
    offsets: Vec<usize>,
    items: Vec<VertexId>,
}

impl NeighborhoodTable {
    /// Copies the neighborhoods of `ids` (sorted, deduplicated) out of `g`.
    pub fn from_graph(g: &LayerGraph, ids: Vec<VertexId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        let mut offsets = Vec::with_capacity(ids.len() + 1);
        offsets.push(0usize);
        let mut items = Vec::new();
        for &u in &ids {
            items.extend_from_slice(g.neighbors(u));
            offsets.push(items.len());
        }
        NeighborhoodTable { ids, offsets, items }
    }

    pub fn empty() -> Self {
        NeighborhoodTable {
            ids: Vec::new(),
            offsets: vec![0],
            items: Vec::new(),
        }
    }

    /// The neighborhood of `u`, if retained.
    pub fn get(&self, u: VertexId) -> Option<&[VertexId]> {
        let idx = self.ids.binary_search(&u).ok()?;
        Some(&self.items[self.offsets[idx]..self.offsets[idx + 1]])
    }

    pub fn contains(&self, u: VertexId) -> bool {
        self.ids.binary_search(&u).is_ok()
    }

    /// Retained vertex ids, sorted ascending.
    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    fn check(&self, n: usize) -> std::result::Result<(), String> {
        if self.offsets.len() != self.ids.len() + 1 {
            return Err("neighborhood offsets inconsistent with ids".into());
        }
        if self.offsets.first() != Some(&0) || *self.offsets.last().unwrap() != self.items.len() {
            return Err("neighborhood offsets out of range".into());
        }
        if !self.offsets.windows(2).all(|w| w[0] <= w[1]) {
            return Err("neighborhood offsets not monotone".into());
        }
        if !self.ids.windows(2).all(|w| w[0] < w[1]) {
            return Err("neighborhood ids not strictly sorted".into());
        }
        if self.ids.iter().any(|&u| u as usize >= n)
            || self.items.iter().any(|&v| v as usize >= n)
        {
            return Err("neighborhood vertex id out of range".into());
        }
        Ok(())
    }
}

/// How much adjacency a degree analysis keeps around for later composition.
///
/// `Fraction` keeps full neighborhoods for the first `ceil(fraction * n)`
/// vertices of a seeded random permutation, so subsets taken with the same
/// seed are nested as the fraction grows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RetentionPolicy {
    None,
    HubsOnly,
    Fraction { fraction: f64, seed: u64 },
    All,
}

impl std::fmt::Display for RetentionPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RetentionPolicy::None => write!(f, "none"),
            RetentionPolicy::HubsOnly => write!(f, "hubs-only"),
            RetentionPolicy::Fraction { fraction, seed } => {
                write!(f, "fraction {fraction} (seed {seed})")
            }
            RetentionPolicy::All => write!(f, "all"),
        }
    }
}

/// Degree-side analysis result for one layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub layer_name: String,
    pub n: usize,
    /// Per-vertex degree, indexed by vertex id.
    pub deg: Vec<u32>,
    /// Exact degree total; `avg_deg` is this over `n`.
    pub deg_sum: u64,
    pub avg_deg: f64,
    /// Vertices with degree >= average, sorted. Ties count as hubs and the
    /// comparison is exact: `n * deg(u) >= deg_sum`.
    pub hubs: Vec<VertexId>,
    pub retention: RetentionPolicy,
    /// Present under `hubs-only` and `all` retention.
    pub hub_neighborhoods: Option<NeighborhoodTable>,
    /// Present under `fraction` and `all` retention.
    pub full_neighborhoods: Option<NeighborhoodTable>,
    /// Wall-clock time the analysis took.
    pub psi_time: Duration,
}

/// Closeness-side analysis result for one layer.
///
/// `sum_dist` charges unreachable pairs a distance of `n`; `cc_value` is the
/// component-weighted closeness `((r-1)/(n-1)) * ((r-1) / sum of distances
/// inside u's component)`, zero for isolated vertices, where `r` is the size
/// of u's component. On a connected graph it reduces to `(n-1)/sum_dist`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosenessSummary {
    pub layer_name: String,
    pub n: usize,
    pub deg: Vec<u32>,
    pub sum_dist: Vec<u64>,
    pub cc_value: Vec<f64>,
    pub component_size: Vec<u32>,
    /// Vertices with `cc_value >= mean cc_value`, sorted.
    pub cc_nodes: Vec<VertexId>,
    /// Neighborhoods of the `cc_nodes`.
    pub cc_neighborhoods: NeighborhoodTable,
    pub psi_time: Duration,
}

/// Either kind of per-layer summary; what analysis artifacts store.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LayerSummary {
    Degree(DegreeSummary),
    Closeness(ClosenessSummary),
}

impl LayerSummary {
    pub fn layer_name(&self) -> &str {
        match self {
            LayerSummary::Degree(s) => &s.layer_name,
            LayerSummary::Closeness(s) => &s.layer_name,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            LayerSummary::Degree(s) => s.n,
            LayerSummary::Closeness(s) => s.n,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            LayerSummary::Degree(_) => "degree",
            LayerSummary::Closeness(_) => "closeness",
        }
    }

    pub fn psi_time(&self) -> Duration {
        match self {
            LayerSummary::Degree(s) => s.psi_time,
            LayerSummary::Closeness(s) => s.psi_time,
        }
    }

    pub fn as_degree(&self) -> Result<&DegreeSummary> {
        match self {
            LayerSummary::Degree(s) => Ok(s),
            LayerSummary::Closeness(_) => Err(MlnError::SummaryKindMismatch {
                expected: "degree",
                got: "closeness",
            }),
        }
    }

    pub fn as_closeness(&self) -> Result<&ClosenessSummary> {
        match self {
            LayerSummary::Closeness(s) => Ok(s),
            LayerSummary::Degree(_) => Err(MlnError::SummaryKindMismatch {
                expected: "closeness",
                got: "degree",
            }),
        }
    }
}

fn check_sorted_in_range(ids: &[VertexId], n: usize, what: &str) -> std::result::Result<(), String> {
    if !ids.windows(2).all(|w| w[0] < w[1]) {
        return Err(format!("{what} not strictly sorted"));
    }
    if ids.last().is_some_and(|&u| u as usize >= n) {
        return Err(format!("{what} contains an id out of range"));
    }
    Ok(())
}

impl DegreeSummary {
    /// Structural consistency check, applied to deserialized artifacts.
    pub fn validate(&self) -> Result<()> {
        self.validate_inner().map_err(MlnError::ArtifactInvalid)
    }

    fn validate_inner(&self) -> std::result::Result<(), String> {
        if self.deg.len() != self.n {
            return Err("deg length != n".into());
        }
        let sum: u64 = self.deg.iter().map(|&d| d as u64).sum();
        if sum != self.deg_sum {
            return Err("deg_sum does not match deg".into());
        }
        check_sorted_in_range(&self.hubs, self.n, "hubs")?;
        let expect: Vec<VertexId> = (0..self.n)
            .filter(|&u| self.n as u64 * self.deg[u] as u64 >= self.deg_sum)
            .map(|u| u as VertexId)
            .collect();
        if expect != self.hubs {
            return Err("hubs do not satisfy the degree >= average rule".into());
        }
        if let Some(t) = &self.hub_neighborhoods {
            t.check(self.n)?;
        }
        if let Some(t) = &self.full_neighborhoods {
            t.check(self.n)?;
        }
        Ok(())
    }
}

impl ClosenessSummary {
    pub fn validate(&self) -> Result<()> {
        self.validate_inner().map_err(MlnError::ArtifactInvalid)
    }

    fn validate_inner(&self) -> std::result::Result<(), String> {
        for (name, len) in [
            ("deg", self.deg.len()),
            ("sum_dist", self.sum_dist.len()),
            ("cc_value", self.cc_value.len()),
            ("component_size", self.component_size.len()),
        ] {
            if len != self.n {
                return Err(format!("{name} length != n"));
            }
        }
        check_sorted_in_range(&self.cc_nodes, self.n, "cc_nodes")?;
        self.cc_neighborhoods.check(self.n)?;
        Ok(())
    }
}

impl LayerSummary {
    pub fn validate(&self) -> Result<()> {
        match self {
            LayerSummary::Degree(s) => s.validate(),
            LayerSummary::Closeness(s) => s.validate(),
        }
    }
}

pub const ARTIFACT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct PsiArtifact {
    version: u32,
    #[serde(flatten)]
    summary: LayerSummary,
}

/// Writes a summary as a versioned JSON artifact.
pub fn write_psi_artifact(summary: &LayerSummary, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| MlnError::io(path, e))?;
    let artifact = PsiArtifact {
        version: ARTIFACT_VERSION,
        summary: summary.clone(),
    };
    serde_json::to_writer(BufWriter::new(file), &artifact)
        .map_err(|e| MlnError::io(path, std::io::Error::other(e)))
}

/// Reads a summary artifact, checking version and structural invariants.
pub fn read_psi_artifact(path: impl AsRef<Path>) -> Result<LayerSummary> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| MlnError::io(path, e))?;
    let artifact: PsiArtifact = serde_json::from_reader(BufReader::new(file)).map_err(|e| {
        MlnError::ArtifactFormat {
            path: path.to_path_buf(),
            source: e,
        }
    })?;
    if artifact.version != ARTIFACT_VERSION {
        return Err(MlnError::ArtifactVersion {
            found: artifact.version,
            supported: ARTIFACT_VERSION,
        });
    }
    artifact.summary.validate()?;
    Ok(artifact.summary)
}
