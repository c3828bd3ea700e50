//! Edge-list files and layer-analysis artifacts.
//!
//! Edge lists are UTF-8 text: one `u v` pair per line, whitespace separated,
//! `#` starts a comment line, blank lines are ignored. Files written here
//! list each undirected edge once as `u v` with `u < v`, ascending.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write as _};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{MlnError, Result};
use crate::graph::{LayerGraph, VertexId};

/// Load statistics: what the parser saw and what normalization removed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub edge_lines: usize,
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

fn parse_lines(path: &Path) -> Result<(Vec<(u64, u64)>, usize)> {
    let file = File::open(path).map_err(|e| MlnError::io(path, e))?;
    let mut reader = BufReader::new(file);
    let mut buf = String::new();
    let mut pairs = Vec::new();
    let mut line_no = 0usize;
    loop {
        buf.clear();
        let read = reader
            .read_line(&mut buf)
            .map_err(|e| MlnError::io(path, e))?;
        if read == 0 {
            break;
        }
        line_no += 1;
        let line = buf.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_ascii_whitespace();
        let parse = |tok: Option<&str>| -> Option<u64> { tok.and_then(|t| t.parse().ok()) };
        match (parse(it.next()), parse(it.next()), it.next()) {
            (Some(u), Some(v), None) => pairs.push((u, v)),
            _ => {
                return Err(MlnError::Parse {
                    path: path.to_path_buf(),
                    line: line_no,
                    found: line.to_string(),
                })
            }
        }
    }
    Ok((pairs, line_no))
}

/// Reads an edge list. With `n = None` the vertex count is inferred as
/// `1 + max id seen` (trailing isolated vertices need an explicit `n`).
/// Self-loops and duplicate edges are dropped silently but counted in the
/// returned [`LoadStats`].
pub fn load_edge_list(path: impl AsRef<Path>, n: Option<usize>) -> Result<(LayerGraph, LoadStats)> {
    let path = path.as_ref();
    let (pairs, _) = parse_lines(path)?;
    let edge_lines = pairs.len();
    let n = match n {
        Some(n) => n,
        None => pairs
            .iter()
            .map(|&(u, v)| u.max(v) as usize + 1)
            .max()
            .unwrap_or(0),
    };
    for &(u, v) in &pairs {
        let id = u.max(v);
        if id >= n as u64 {
            return Err(MlnError::VertexOutOfRange { id, n });
        }
    }
    let (graph, norm) = LayerGraph::from_edges_with_stats(
        n,
        pairs.into_iter().map(|(u, v)| (u as VertexId, v as VertexId)),
    )?;
    Ok((
        graph,
        LoadStats {
            edge_lines,
            self_loops_dropped: norm.self_loops_dropped,
            duplicates_collapsed: norm.duplicates_collapsed,
        },
    ))
}

/// Translation table from dense ids back to the ids found in the input file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdMap {
    /// `original[dense]` is the id the input used for dense vertex `dense`.
    pub original: Vec<u64>,
}

impl IdMap {
    pub fn original_id(&self, dense: VertexId) -> u64 {
        self.original[dense as usize]
    }

    pub fn len(&self) -> usize {
        self.original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.original.is_empty()
    }
}

/// Reads an edge list whose ids are arbitrary non-negative integers,
/// compacting them to dense `[0, n)` in order of first appearance by value.
/// The returned [`IdMap`] translates dense ids back to the originals.
pub fn load_edge_list_remapped(
    path: impl AsRef<Path>,
) -> Result<(LayerGraph, IdMap, LoadStats)> {
    let path = path.as_ref();
    let (pairs, _) = parse_lines(path)?;
    let edge_lines = pairs.len();

    let mut ids: Vec<u64> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let dense_of = |id: u64| ids.binary_search(&id).expect("id present") as VertexId;

    let n = ids.len();
    let (graph, norm) = LayerGraph::from_edges_with_stats(
        n,
        pairs.iter().map(|&(u, v)| (dense_of(u), dense_of(v))),
    )?;
    Ok((
        graph,
        IdMap { original: ids },
        LoadStats {
            edge_lines,
            self_loops_dropped: norm.self_loops_dropped,
            duplicates_collapsed: norm.duplicates_collapsed,
        },
    ))
}

/// Writes the graph as an edge list, one undirected edge per line,
/// `u < v`, ascending. Output round-trips through [`load_edge_list`].
pub fn save_edge_list(graph: &LayerGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| MlnError::io(path, e))?;
    let mut w = BufWriter::new(file);
    for (u, v) in graph.edges() {
        writeln!(w, "{} {}", u, v).map_err(|e| MlnError::io(path, e))?;
    }
    w.flush().map_err(|e| MlnError::io(path, e))
}

/// Optional sidecar next to an edge list (`<file>.meta.json`) recording the
/// vertex count, so graphs with trailing isolated vertices load correctly
/// without a flag.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeListMeta {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_count: Option<usize>,
}

pub fn sidecar_path(edge_list: &Path) -> PathBuf {
    let mut s = edge_list.as_os_str().to_os_string();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn read_sidecar(edge_list: &Path) -> Result<Option<EdgeListMeta>> {
    let path = sidecar_path(edge_list);
    if !path.exists() {
        return Ok(None);
    }
    let file = File::open(&path).map_err(|e| MlnError::io(&path, e))?;
    let meta = serde_json::from_reader(BufReader::new(file)).map_err(|e| MlnError::ArtifactFormat {
        path,
        source: e,
    })?;
    Ok(Some(meta))
}

pub fn write_sidecar(edge_list: &Path, meta: &EdgeListMeta) -> Result<()> {
    let path = sidecar_path(edge_list);
    let file = File::create(&path).map_err(|e| MlnError::io(&path, e))?;
    serde_json::to_writer_pretty(BufWriter::new(file), meta)
        .map_err(|e| MlnError::io(&path, std::io::Error::other(e)))
}

/// Resolves the vertex count for an edge list: explicit value first, then
/// sidecar metadata, otherwise inferred from the file contents.
pub fn load_edge_list_auto(
    path: impl AsRef<Path>,
    explicit_n: Option<usize>,
) -> Result<(LayerGraph, LoadStats)> {
    let path = path.as_ref();
    let n = match explicit_n {
        Some(n) => Some(n),
        None => read_sidecar(path)?.map(|m| m.n),
    };
    load_edge_list(path, n)
}
