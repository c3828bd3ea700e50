//! The four single-shot subcommands. `run` and `report` have their own
//! modules.

use std::fs;
use std::path::Path;

use mln_core::gen::{build_suite, load_dataset, SuiteManifest};
use mln_core::{
    analyze_layers, ground_truth_cc_nodes, ground_truth_degree_hubs, read_psi_artifact,
    write_psi_artifact, AnalysisKind, LayerSummary, RetentionPolicy, VertexId,
};
use serde::Serialize;

use crate::methods::parse_methods;
use crate::run::compose_one;
use crate::{CliError, Retain};

pub fn cmd_generate(manifest_path: &Path, out_dir: &Path) -> Result<(), CliError> {
    let manifest = SuiteManifest::from_json_file(manifest_path)?;
    if manifest.datasets.is_empty() {
        return Err(CliError::Data(format!(
            "no datasets in manifest {}",
            manifest_path.display()
        )));
    }
    let metas = build_suite(&manifest, out_dir)?;
    for m in &metas {
        println!(
            "{}: n={}, edges {}+{} -> {}",
            m.id,
            m.n,
            m.edges_l1,
            m.edges_l2,
            out_dir.join(&m.id).display()
        );
    }
    log::info!(
        "wrote {} dataset directories under {}",
        metas.len(),
        out_dir.display()
    );
    Ok(())
}

pub fn cmd_analyze(
    dataset: &Path,
    kind: AnalysisKind,
    retain: Retain,
    fraction: Option<f64>,
    seed: u64,
    out_dir: Option<&Path>,
) -> Result<(), CliError> {
    let retain = match (retain, fraction) {
        (Retain::Fraction, Some(f)) if (0.0..=1.0).contains(&f) => {
            RetentionPolicy::Fraction { fraction: f, seed }
        }
        (Retain::Fraction, Some(f)) => {
            return Err(CliError::Usage(format!(
                "--fraction must be in [0, 1], got {f}"
            )));
        }
        (Retain::Fraction, None) => {
            return Err(CliError::Usage(
                "--retain fraction needs --fraction <f>".into(),
            ));
        }
        (Retain::None, _) => RetentionPolicy::None,
        (Retain::HubsOnly, _) => RetentionPolicy::HubsOnly,
        (Retain::All, _) => RetentionPolicy::All,
    };
    if kind == AnalysisKind::Closeness && retain != RetentionPolicy::None {
        log::warn!("closeness summaries have a fixed payload; --retain is ignored");
    }

    let (mln, meta) = load_dataset(dataset)?;
    let summaries = analyze_layers(&mln, kind, retain);
    let out_dir = match out_dir {
        Some(d) => d.to_path_buf(),
        None => dataset.join("psi"),
    };
    fs::create_dir_all(&out_dir)
        .map_err(|e| CliError::Data(format!("creating {}: {e}", out_dir.display())))?;
    for s in &summaries {
        let path = out_dir.join(format!("psi-{}-{kind}.json", s.layer_name()));
        write_psi_artifact(s, &path)?;
        println!("{} (analyzed in {:?})", path.display(), s.psi_time());
    }
    log::info!("dataset {}: {} summaries written", meta.id, summaries.len());
    Ok(())
}

#[derive(Serialize)]
struct ComposeOutput {
    schema_version: u32,
    kind: String,
    method: String,
    count: usize,
    theta_time_ms: f64,
    nodes: Vec<VertexId>,
}

pub fn cmd_compose(
    x: &Path,
    y: &Path,
    method: &str,
    top_k: Option<usize>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let sx = read_psi_artifact(x)?;
    let sy = read_psi_artifact(y)?;
    let kind = match (&sx, &sy) {
        (LayerSummary::Degree(_), LayerSummary::Degree(_)) => AnalysisKind::Degree,
        (LayerSummary::Closeness(_), LayerSummary::Closeness(_)) => AnalysisKind::Closeness,
        _ => {
            return Err(CliError::Data(format!(
                "artifact kinds disagree: {} holds {}, {} holds {}",
                x.display(),
                sx.kind_name(),
                y.display(),
                sy.kind_name()
            )));
        }
    };
    let specs = parse_methods(kind, &[method.to_string()], &[], top_k)?;
    let summaries = [sx, sy];
    let (nodes, theta_time) = compose_one(&specs[0], &summaries)?;
    println!(
        "{}: {} vertices, theta {:?}",
        specs[0].label(),
        nodes.len(),
        theta_time
    );
    if let Some(out) = out {
        let payload = ComposeOutput {
            schema_version: 1,
            kind: kind.to_string(),
            method: specs[0].label(),
            count: nodes.len(),
            theta_time_ms: theta_time.as_secs_f64() * 1e3,
            nodes,
        };
        let text = serde_json::to_string_pretty(&payload).expect("output serializes");
        fs::write(out, text)
            .map_err(|e| CliError::Data(format!("writing {}: {e}", out.display())))?;
        log::info!("wrote {}", out.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct GroundTruthOutput {
    schema_version: u32,
    kind: String,
    n: usize,
    edges_agg: usize,
    elapsed_ms: f64,
    nodes: Vec<VertexId>,
}

pub fn cmd_ground_truth(
    dataset: &Path,
    kind: AnalysisKind,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (mln, meta) = load_dataset(dataset)?;
    let (nodes, edges_agg, elapsed) = match kind {
        AnalysisKind::Degree => {
            let gt = ground_truth_degree_hubs(mln.layer(0), mln.layer(1))?;
            (gt.hubs, gt.graph.edge_count(), gt.elapsed)
        }
        AnalysisKind::Closeness => {
            let gt = ground_truth_cc_nodes(mln.layer(0), mln.layer(1))?;
            (gt.summary.cc_nodes, gt.graph.edge_count(), gt.elapsed)
        }
    };
    println!(
        "{kind} ground truth for {}: {} of {} vertices (combined edges {edges_agg}, {elapsed:?})",
        meta.id,
        nodes.len(),
        meta.n
    );
    if let Some(out) = out {
        let payload = GroundTruthOutput {
            schema_version: 1,
            kind: kind.to_string(),
            n: meta.n,
            edges_agg,
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
            nodes,
        };
        let text = serde_json::to_string_pretty(&payload).expect("output serializes");
        fs::write(out, text)
            .map_err(|e| CliError::Data(format!("writing {}: {e}", out.display())))?;
        log::info!("wrote {}", out.display());
    }
    Ok(())
}
