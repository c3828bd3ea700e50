//! Manifest-driven benchmark suite builder.
//!
//! A manifest describes a family of two-layer networks to materialize on
//! disk. Every dataset gets its own seed derived from the manifest seed and
//! the dataset id, so adding or reordering datasets never perturbs the
//! others.

use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

use crate::error::{MlnError, Result};
use crate::gen::normal::{generate_normal, NormalParams};
use crate::gen::rmat::{generate_rmat, RmatParams};
use crate::gen::split::{split_layers, SplitMode};
use crate::gen::fold_seed;
use crate::graph::LayerGraph;
use crate::io::{load_edge_list, save_edge_list};
use crate::MultilayerNetwork;

/// Single-layer generator choice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenKind {
    Rmat {
        edges: usize,
        #[serde(default)]
        params: RmatParams,
    },
    Normal { mean_deg: f64, sd_deg: f64 },
}

impl GenKind {
    fn realize(&self, n: usize, seed: u64) -> Result<LayerGraph> {
        match self {
            GenKind::Rmat { edges, params } => generate_rmat(n, *edges, params, seed),
            GenKind::Normal { mean_deg, sd_deg } => generate_normal(
                n,
                &NormalParams {
                    mean_deg: *mean_deg,
                    sd_deg: *sd_deg,
                },
                seed,
            ),
        }
    }
}

/// How the two layers of a dataset come to be.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "plan", rename_all = "snake_case")]
pub enum LayerPlan {
    /// Each layer is generated independently.
    Separate { l1: GenKind, l2: GenKind },
    /// One base graph is generated and then divided into two layers.
    Split { base: GenKind, mode: SplitMode },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub id: String,
    pub n: usize,
    pub layers: LayerPlan,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteManifest {
    pub seed: u64,
    pub datasets: Vec<DatasetSpec>,
}

/// Provenance record written next to each dataset's edge lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub id: String,
    pub n: usize,
    pub edges_l1: usize,
    pub edges_l2: usize,
    pub layers: LayerPlan,
    pub manifest_seed: u64,
    pub dataset_seed: u64,
    pub generator_version: String,
}

fn validate_id(id: &str) -> Result<()> {
    if id.is_empty()
        || !id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'))
    {
        return Err(MlnError::InvalidGenSpec(format!(
            "dataset id {id:?} must be non-empty and use only [A-Za-z0-9._-]"
        )));
    }
    Ok(())
}

impl SuiteManifest {
    pub fn validate(&self) -> Result<()> {
        let mut ids: Vec<&str> = Vec::with_capacity(self.datasets.len());
        for ds in &self.datasets {
            validate_id(&ds.id)?;
            if ids.contains(&ds.id.as_str()) {
                return Err(MlnError::InvalidGenSpec(format!(
                    "duplicate dataset id {:?}",
                    ds.id
                )));
            }
            ids.push(&ds.id);
        }
        Ok(())
    }

    pub fn from_json_file(path: &Path) -> Result<SuiteManifest> {
        let text = fs::read_to_string(path).map_err(|e| MlnError::io(path, e))?;
        let manifest: SuiteManifest =
            serde_json::from_str(&text).map_err(|e| MlnError::ArtifactFormat {
                path: path.to_path_buf(),
                source: e,
            })?;
        manifest.validate()?;
        Ok(manifest)
    }
}

/// Generates both layers of one dataset in memory.
pub fn realize_dataset(
    spec: &DatasetSpec,
    manifest_seed: u64,
) -> Result<(LayerGraph, LayerGraph, DatasetMeta)> {
    validate_id(&spec.id)?;
    let dataset_seed = fold_seed(manifest_seed, &spec.id);
    let (l1, l2) = match &spec.layers {
        LayerPlan::Separate { l1, l2 } => (
            l1.realize(spec.n, fold_seed(dataset_seed, "l1"))?,
            l2.realize(spec.n, fold_seed(dataset_seed, "l2"))?,
        ),
        LayerPlan::Split { base, mode } => {
            let base_graph = base.realize(spec.n, fold_seed(dataset_seed, "base"))?;
            split_layers(&base_graph, mode, fold_seed(dataset_seed, "split"))?
        }
    };
    let meta = DatasetMeta {
        id: spec.id.clone(),
        n: spec.n,
        edges_l1: l1.edge_count(),
        edges_l2: l2.edge_count(),
        layers: spec.layers.clone(),
        manifest_seed,
        dataset_seed,
        generator_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    Ok((l1, l2, meta))
}

/// Materializes every dataset in the manifest under `out_dir/<id>/` as
/// `L1.edges`, `L2.edges`, and `meta.json`. Returns the metas in manifest
/// order.
pub fn build_suite(manifest: &SuiteManifest, out_dir: &Path) -> Result<Vec<DatasetMeta>> {
    manifest.validate()?;
    let mut metas = Vec::with_capacity(manifest.datasets.len());
    for spec in &manifest.datasets {
        let (l1, l2, meta) = realize_dataset(spec, manifest.seed)?;
        let dir = out_dir.join(&spec.id);
        fs::create_dir_all(&dir).map_err(|e| MlnError::io(&dir, e))?;
        save_edge_list(&l1, dir.join("L1.edges"))?;
        save_edge_list(&l2, dir.join("L2.edges"))?;
        let meta_path = dir.join("meta.json");
        let json = serde_json::to_string_pretty(&meta).expect("meta serializes");
        fs::write(&meta_path, json).map_err(|e| MlnError::io(&meta_path, e))?;
        metas.push(meta);
    }
    Ok(metas)
}

/// Loads a dataset directory produced by [`build_suite`] back into memory.
pub fn load_dataset(dir: &Path) -> Result<(MultilayerNetwork, DatasetMeta)> {
    let meta_path = dir.join("meta.json");
    let text = fs::read_to_string(&meta_path).map_err(|e| MlnError::io(&meta_path, e))?;
    let meta: DatasetMeta = serde_json::from_str(&text).map_err(|e| MlnError::ArtifactFormat {
        path: meta_path.clone(),
        source: e,
    })?;
    let (l1, s1) = load_edge_list(dir.join("L1.edges"), Some(meta.n))?;
    let (l2, s2) = load_edge_list(dir.join("L2.edges"), Some(meta.n))?;
    if l1.edge_count() != meta.edges_l1 || l2.edge_count() != meta.edges_l2 {
        return Err(MlnError::ArtifactInvalid(format!(
            "dataset {}: edge counts {}/{} disagree with meta {}/{}",
            meta.id,
            l1.edge_count(),
            l2.edge_count(),
            meta.edges_l1,
            meta.edges_l2
        )));
    }
    debug_assert_eq!(s1.self_loops_dropped + s2.self_loops_dropped, 0);
    let mln = MultilayerNetwork::new(vec![("L1".into(), l1), ("L2".into(), l2)])?;
    Ok((mln, meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn small_manifest() -> SuiteManifest {
        SuiteManifest {
            seed: 42,
            datasets: vec![
                DatasetSpec {
                    id: "rmat-pair".into(),
                    n: 200,
                    layers: LayerPlan::Separate {
                        l1: GenKind::Rmat {
                            edges: 600,
                            params: RmatParams::default(),
                        },
                        l2: GenKind::Rmat {
                            edges: 400,
                            params: RmatParams::default(),
                        },
                    },
                },
                DatasetSpec {
                    id: "split-70-30".into(),
                    n: 200,
                    layers: LayerPlan::Split {
                        base: GenKind::Rmat {
                            edges: 800,
                            params: RmatParams::default(),
                        },
                        mode: SplitMode::Partition { p1: 0.7, p2: 0.3 },
                    },
                },
                DatasetSpec {
                    id: "normal-pair".into(),
                    n: 150,
                    layers: LayerPlan::Separate {
                        l1: GenKind::Normal {
                            mean_deg: 6.0,
                            sd_deg: 2.0,
                        },
                        l2: GenKind::Normal {
                            mean_deg: 4.0,
                            sd_deg: 1.0,
                        },
                    },
                },
            ],
        }
    }

    #[test]
    fn build_then_load_round_trips() {
        let dir = tempdir().unwrap();
        let manifest = small_manifest();
        let metas = build_suite(&manifest, dir.path()).unwrap();
        assert_eq!(metas.len(), 3);
        for meta in &metas {
            let (mln, loaded_meta) = load_dataset(&dir.path().join(&meta.id)).unwrap();
            assert_eq!(&loaded_meta, meta);
            assert_eq!(mln.n(), meta.n);
            assert_eq!(mln.layer(0).edge_count(), meta.edges_l1);
            assert_eq!(mln.layer(1).edge_count(), meta.edges_l2);
            assert_eq!(mln.layer_name(0), "L1");
        }
    }

    #[test]
    fn rebuild_is_byte_identical() {
        let manifest = small_manifest();
        let d1 = tempdir().unwrap();
        let d2 = tempdir().unwrap();
        build_suite(&manifest, d1.path()).unwrap();
        build_suite(&manifest, d2.path()).unwrap();
        for id in ["rmat-pair", "split-70-30", "normal-pair"] {
            for file in ["L1.edges", "L2.edges"] {
                let a = fs::read(d1.path().join(id).join(file)).unwrap();
                let b = fs::read(d2.path().join(id).join(file)).unwrap();
                assert_eq!(a, b, "{id}/{file}");
            }
        }
    }

    #[test]
    fn dataset_seeds_are_independent_of_manifest_order() {
        let manifest = small_manifest();
        let mut reordered = manifest.clone();
        reordered.datasets.reverse();
        let spec = &manifest.datasets[0];
        let (a1, a2, _) = realize_dataset(spec, manifest.seed).unwrap();
        let again = reordered
            .datasets
            .iter()
            .find(|d| d.id == spec.id)
            .unwrap();
        let (b1, b2, _) = realize_dataset(again, reordered.seed).unwrap();
        assert_eq!(a1, b1);
        assert_eq!(a2, b2);
    }

    #[test]
    fn manifest_validation() {
        let mut manifest = small_manifest();
        manifest.datasets[1].id = manifest.datasets[0].id.clone();
        assert!(manifest.validate().is_err());

        let mut bad_id = small_manifest();
        bad_id.datasets[0].id = "has space".into();
        assert!(bad_id.validate().is_err());
        bad_id.datasets[0].id = String::new();
        assert!(bad_id.validate().is_err());
    }

    #[test]
    fn manifest_json_round_trip() {
        let dir = tempdir().unwrap();
        let manifest = small_manifest();
        let path = dir.path().join("suite.json");
        fs::write(&path, serde_json::to_string_pretty(&manifest).unwrap()).unwrap();
        let loaded = SuiteManifest::from_json_file(&path).unwrap();
        assert_eq!(loaded, manifest);
    }

    #[test]
    fn meta_records_seeds_and_version() {
        let manifest = small_manifest();
        let (_, _, meta) = realize_dataset(&manifest.datasets[0], manifest.seed).unwrap();
        assert_eq!(meta.manifest_seed, 42);
        assert_eq!(meta.dataset_seed, fold_seed(42, "rmat-pair"));
        assert_eq!(meta.generator_version, env!("CARGO_PKG_VERSION"));
    }
}
