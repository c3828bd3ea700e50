use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum MlnError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: expected `u v` with non-negative integer ids, found {found:?}")]
    Parse {
        path: PathBuf,
        line: usize,
        found: String,
    },

    #[error("vertex id {id} out of range for n = {n}")]
    VertexOutOfRange { id: u64, n: usize },

    #[error("vertex count mismatch: {left} vs {right}")]
    VertexCountMismatch { left: usize, right: usize },

    #[error("duplicate layer name {0:?}")]
    DuplicateLayerName(String),

    #[error("a multilayer network needs at least one layer")]
    EmptyNetwork,

    #[error("expected exactly two layers, got {0}")]
    NotTwoLayers(usize),

    #[error("{method} needs hub neighborhoods; re-run layer analysis with retention `hubs-only` or `all`")]
    MissingHubNeighborhoods { method: &'static str },

    #[error("{method} needs retained full neighborhoods; re-run layer analysis with retention `fraction` or `all`")]
    MissingRetainedNeighborhoods { method: &'static str },

    #[error("retained-neighborhood subsets differ between the two summaries ({left} vs {right}); both layers must be analyzed with the same fraction and seed")]
    RetentionMismatch { left: String, right: String },

    #[error("summary kind mismatch: expected {expected}, got {got}")]
    SummaryKindMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("unsupported artifact version {found} (this build reads version {supported})")]
    ArtifactVersion { found: u32, supported: u32 },

    #[error("malformed artifact {path}: {source}")]
    ArtifactFormat {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("artifact failed validation: {0}")]
    ArtifactInvalid(String),

    #[error("n = {n} exceeds the brute-force bound {bound}")]
    BruteForceBound { n: usize, bound: usize },

    #[error("invalid generator parameters: {0}")]
    InvalidGenSpec(String),

    #[error("could not place {placed} of {requested} distinct edges within the attempt budget; the request is too dense for this generator")]
    EdgeBudgetUnreachable { requested: usize, placed: usize },

    #[error("degree sequence could not be realized as a simple graph after bounded repair")]
    NonGraphicalSequence,

    #[error("no rows to summarize")]
    EmptyMetricInput,

    #[error("row sets have different lengths: {left} vs {right}")]
    RowCountMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, MlnError>;

impl MlnError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        MlnError::Io {
            path: path.into(),
            source,
        }
    }
}
