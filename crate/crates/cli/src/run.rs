//! The end-to-end `run` pipeline: load datasets, time the per-layer
//! analysis, every requested composition, and the exact baseline, then emit
//! one row per (dataset, method).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use mln_core::gen::load_dataset;
use mln_core::{
    analyze_layers, cc1, cc2, compare_sets, dc_a1, dc_a2, dc_a2_with_info, dc_p1, dc_p2,
    ground_truth_cc_nodes, ground_truth_degree_hubs, naive_and_cc, naive_or, summarize,
    AnalysisKind, Cc1Config, ClosenessMethod, DegreeMethod, LayerSummary, MultilayerNetwork,
    RetentionPolicy, SetComparison, SuiteSummary, VertexId,
};
use rayon::prelude::*;

use crate::methods::{required_retention, MethodSpec};
use crate::table::{ResultRow, RunReport, CSV_HEADER};
use crate::CliError;

pub struct RunConfig<'a> {
    pub kind: AnalysisKind,
    pub methods: &'a [MethodSpec],
    pub gt_cap: Option<usize>,
    pub seed: u64,
}

pub fn cmd_run(
    dirs: &[PathBuf],
    cfg: &RunConfig,
    out_csv: &Path,
    print_json: bool,
) -> Result<(), CliError> {
    let dirs = expand_dataset_dirs(dirs)?;
    let per_dataset: Vec<Vec<ResultRow>> = dirs
        .par_iter()
        .map(|dir| eval_dataset(dir, cfg))
        .collect::<Result<_, _>>()?;
    let mut rows: Vec<ResultRow> = per_dataset.into_iter().flatten().collect();
    rows.sort_by(|a, b| {
        (a.dataset_id.as_str(), a.method.as_str()).cmp(&(b.dataset_id.as_str(), b.method.as_str()))
    });

    let csv_text = to_csv(&rows);
    fs::write(out_csv, &csv_text)
        .map_err(|e| CliError::Data(format!("writing {}: {e}", out_csv.display())))?;
    let report = RunReport {
        schema_version: 1,
        kind: cfg.kind.to_string(),
        seed: cfg.seed,
        suite: suite_means(&rows),
        rows,
    };
    let json_path = out_csv.with_extension("json");
    let json_text = serde_json::to_string_pretty(&report).expect("report serializes");
    fs::write(&json_path, &json_text)
        .map_err(|e| CliError::Data(format!("writing {}: {e}", json_path.display())))?;
    log::info!("wrote {} and {}", out_csv.display(), json_path.display());

    if print_json {
        println!("{json_text}");
    } else {
        print!("{csv_text}");
    }
    Ok(())
}

/// Accepts either dataset directories or parents holding several of them.
fn expand_dataset_dirs(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut out = Vec::new();
    for p in paths {
        if p.join("meta.json").is_file() {
            out.push(p.clone());
            continue;
        }
        let entries =
            fs::read_dir(p).map_err(|e| CliError::Data(format!("reading {}: {e}", p.display())))?;
        let mut found = Vec::new();
        for entry in entries {
            let dir =
                entry.map_err(|e| CliError::Data(format!("reading {}: {e}", p.display())))?;
            if dir.path().join("meta.json").is_file() {
                found.push(dir.path());
            }
        }
        if found.is_empty() {
            return Err(CliError::Data(format!(
                "no dataset (no meta.json) under {}",
                p.display()
            )));
        }
        found.sort();
        out.extend(found);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

struct Truth {
    nodes: Vec<VertexId>,
    edges_agg: usize,
    elapsed: Duration,
}

fn ground_truth(mln: &MultilayerNetwork, kind: AnalysisKind) -> Result<Truth, CliError> {
    Ok(match kind {
        AnalysisKind::Degree => {
            let gt = ground_truth_degree_hubs(mln.layer(0), mln.layer(1))?;
            Truth {
                nodes: gt.hubs,
                edges_agg: gt.graph.edge_count(),
                elapsed: gt.elapsed,
            }
        }
        AnalysisKind::Closeness => {
            let gt = ground_truth_cc_nodes(mln.layer(0), mln.layer(1))?;
            Truth {
                nodes: gt.summary.cc_nodes,
                edges_agg: gt.graph.edge_count(),
                elapsed: gt.elapsed,
            }
        }
    })
}

fn eval_dataset(dir: &Path, cfg: &RunConfig) -> Result<Vec<ResultRow>, CliError> {
    // warm load: every timed phase below works on in-memory graphs
    let (mln, meta) = load_dataset(dir)?;
    log::info!(
        "dataset {}: n={}, edges {}+{}",
        meta.id,
        meta.n,
        meta.edges_l1,
        meta.edges_l2
    );

    let truth = match cfg.gt_cap {
        Some(cap) if meta.n > cap => {
            log::warn!(
                "dataset {}: n={} exceeds --gt-cap {cap}; skipping ground truth, accuracy columns stay empty",
                meta.id,
                meta.n
            );
            None
        }
        _ => Some(ground_truth(&mln, cfg.kind)?),
    };

    // one analysis pass per distinct retention level, shared across methods
    let mut psi_cache: Vec<(RetentionPolicy, Vec<LayerSummary>)> = Vec::new();
    let mut rows = Vec::with_capacity(cfg.methods.len());
    for spec in cfg.methods {
        let retain = required_retention(spec, cfg.seed);
        if !psi_cache.iter().any(|(r, _)| *r == retain) {
            psi_cache.push((retain, analyze_layers(&mln, cfg.kind, retain)));
        }
        let summaries = &psi_cache.iter().find(|(r, _)| *r == retain).unwrap().1;

        let (est, theta_time) = compose_one(spec, summaries)?;
        let psi_ms: Vec<f64> = summaries.iter().map(|s| ms(s.psi_time())).collect();
        let psi_max = psi_ms.iter().cloned().fold(0.0, f64::max);
        let theta_ms = ms(theta_time);
        let decoupled = psi_max + theta_ms;

        let (comparison, gt_time_ms, edges_agg, speedup) = match &truth {
            Some(t) => (
                Some(compare_sets(&est, &t.nodes)),
                Some(ms(t.elapsed)),
                Some(t.edges_agg),
                (decoupled > 0.0).then(|| ms(t.elapsed) / decoupled),
            ),
            None => (None, None, None, None),
        };
        rows.push(ResultRow {
            dataset_id: meta.id.clone(),
            n: meta.n,
            edges_l1: meta.edges_l1,
            edges_l2: meta.edges_l2,
            edges_agg,
            method: spec.label(),
            comparison,
            psi_time_per_layer_ms: psi_ms,
            psi_time_max_ms: psi_max,
            theta_time_ms: theta_ms,
            gt_time_ms,
            speedup,
        });
    }
    Ok(rows)
}

/// Runs one composition over a two-layer summary slice.
pub fn compose_one(
    spec: &MethodSpec,
    summaries: &[LayerSummary],
) -> Result<(Vec<VertexId>, Duration), CliError> {
    match spec {
        MethodSpec::Degree(m) => {
            let sx = summaries[0].as_degree()?;
            let sy = summaries[1].as_degree()?;
            let out = match m {
                DegreeMethod::NaiveOr => naive_or(sx, sy)?,
                DegreeMethod::DcA1 => dc_a1(sx, sy)?,
                DegreeMethod::DcA2 => dc_a2(sx, sy)?,
                DegreeMethod::DcA2Info(f) => dc_a2_with_info(sx, sy, *f)?,
                DegreeMethod::DcP1 => dc_p1(sx, sy)?,
                DegreeMethod::DcP2 => dc_p2(sx, sy)?,
            };
            Ok((out.hubs, out.theta_time))
        }
        MethodSpec::Closeness(m, selection) => {
            let sx = summaries[0].as_closeness()?;
            let sy = summaries[1].as_closeness()?;
            let out = match m {
                ClosenessMethod::NaiveAnd => naive_and_cc(sx, sy)?,
                ClosenessMethod::Cc1 => cc1(sx, sy, &Cc1Config::default())?,
                ClosenessMethod::Cc2 => cc2(sx, sy, *selection)?,
            };
            Ok((out.cc_nodes, out.theta_time))
        }
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn suite_means(rows: &[ResultRow]) -> BTreeMap<String, SuiteSummary> {
    let mut per_method: BTreeMap<String, Vec<SetComparison>> = BTreeMap::new();
    for row in rows {
        if let Some(c) = row.comparison {
            per_method.entry(row.method.clone()).or_default().push(c);
        }
    }
    per_method
        .into_iter()
        .map(|(m, comps)| {
            let s = summarize(&comps).expect("non-empty by construction");
            (m, s)
        })
        .collect()
}

fn to_csv(rows: &[ResultRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("csv header");
    for row in rows {
        w.write_record(row.csv_record()).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
}
