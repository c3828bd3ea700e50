//! Post-hoc aggregation of result CSVs: per-method mean accuracy, relative
//! gains over a baseline method, and plot-ready series files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use mln_core::{relative_gain, SuiteSummary};
use serde::Serialize;

use crate::table::CSV_HEADER;
use crate::CliError;

#[derive(Debug, Clone)]
struct CsvRow {
    dataset_id: String,
    method: String,
    jaccard: Option<f64>,
    precision: Option<f64>,
    recall: Option<f64>,
    psi_time_max: f64,
    theta_time: f64,
    gt_time: Option<f64>,
    speedup: Option<f64>,
}

#[derive(Serialize)]
struct MethodReport {
    count: usize,
    mean_jaccard: f64,
    mean_precision: f64,
    mean_recall: f64,
    /// Mean relative jaccard gain over the baseline, in percent; null for
    /// the baseline itself and for methods sharing no dataset with it.
    gain_vs_baseline_pct: Option<f64>,
}

#[derive(Serialize)]
struct ReportSummary {
    schema_version: u32,
    baseline: String,
    methods: BTreeMap<String, MethodReport>,
}

pub fn cmd_report(
    csvs: &[PathBuf],
    baseline: &str,
    out_dir: &Path,
    print_json: bool,
) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for path in csvs {
        read_rows(path, &mut rows)?;
    }
    if rows.is_empty() {
        return Err(CliError::Data("no rows in the input CSVs".into()));
    }

    // per-method accuracy rows and per-(method, dataset) mean jaccard
    let mut acc: BTreeMap<String, Vec<(f64, f64, f64)>> = BTreeMap::new();
    let mut per_dataset: BTreeMap<String, BTreeMap<String, (f64, usize)>> = BTreeMap::new();
    for r in &rows {
        if let (Some(j), Some(p), Some(rc)) = (r.jaccard, r.precision, r.recall) {
            acc.entry(r.method.clone()).or_default().push((j, p, rc));
            let slot = per_dataset
                .entry(r.method.clone())
                .or_default()
                .entry(r.dataset_id.clone())
                .or_insert((0.0, 0));
            slot.0 += j;
            slot.1 += 1;
        }
    }
    let base_by_dataset = per_dataset.get(baseline).cloned().ok_or_else(|| {
        CliError::Data(format!(
            "baseline method {baseline:?} has no accuracy rows in the input"
        ))
    })?;

    let mut methods = BTreeMap::new();
    for (method, triples) in &acc {
        let n = triples.len() as f64;
        let summary = SuiteSummary {
            count: triples.len(),
            mean_jaccard: triples.iter().map(|t| t.0).sum::<f64>() / n,
            mean_precision: triples.iter().map(|t| t.1).sum::<f64>() / n,
            mean_recall: triples.iter().map(|t| t.2).sum::<f64>() / n,
        };
        let gain = if method == baseline {
            None
        } else {
            gain_vs_baseline(&per_dataset[method], &base_by_dataset)?
        };
        methods.insert(
            method.clone(),
            MethodReport {
                count: summary.count,
                mean_jaccard: summary.mean_jaccard,
                mean_precision: summary.mean_precision,
                mean_recall: summary.mean_recall,
                gain_vs_baseline_pct: gain.map(|g| g * 100.0),
            },
        );
    }

    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Data(format!("creating {}: {e}", out_dir.display())))?;
    write_accuracy_series(&rows, &out_dir.join("accuracy_series.csv"))?;
    write_timing_series(&rows, &out_dir.join("timing_series.csv"))?;
    let summary = ReportSummary {
        schema_version: 1,
        baseline: baseline.to_string(),
        methods,
    };
    let json_text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    let json_path = out_dir.join("summary.json");
    fs::write(&json_path, &json_text)
        .map_err(|e| CliError::Data(format!("writing {}: {e}", json_path.display())))?;
    log::info!("wrote {}", json_path.display());

    if print_json {
        println!("{json_text}");
    } else {
        print_table(&summary, baseline);
    }
    Ok(())
}

/// Pairs the two methods' per-dataset mean jaccards over shared datasets.
fn gain_vs_baseline(
    method: &BTreeMap<String, (f64, usize)>,
    baseline: &BTreeMap<String, (f64, usize)>,
) -> Result<Option<f64>, CliError> {
    let mut h = Vec::new();
    let mut b = Vec::new();
    for (dataset, &(sum, count)) in method {
        if let Some(&(bsum, bcount)) = baseline.get(dataset) {
            h.push(sum / count as f64);
            b.push(bsum / bcount as f64);
        }
    }
    if h.is_empty() {
        return Ok(None);
    }
    Ok(relative_gain(&h, &b)?)
}

fn print_table(summary: &ReportSummary, baseline: &str) {
    println!(
        "{:<16} {:>5} {:>13} {:>15} {:>12} {:>12}",
        "method", "rows", "mean jaccard", "mean precision", "mean recall", "gain"
    );
    for (method, report) in &summary.methods {
        let gain = if method == baseline {
            "baseline".to_string()
        } else {
            match report.gain_vs_baseline_pct {
                Some(g) => format!("{g:+.2}%"),
                None => "n/a".to_string(),
            }
        };
        println!(
            "{:<16} {:>5} {:>13.4} {:>15.4} {:>12.4} {:>12}",
            method,
            report.count,
            report.mean_jaccard,
            report.mean_precision,
            report.mean_recall,
            gain
        );
    }
}

fn write_accuracy_series(rows: &[CsvRow], path: &Path) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["dataset_id", "method", "jaccard"])
        .expect("csv header");
    let mut series: Vec<&CsvRow> = rows.iter().filter(|r| r.jaccard.is_some()).collect();
    series.sort_by(|a, b| {
        (a.dataset_id.as_str(), a.method.as_str()).cmp(&(b.dataset_id.as_str(), b.method.as_str()))
    });
    for r in series {
        w.write_record([
            r.dataset_id.as_str(),
            r.method.as_str(),
            &r.jaccard.unwrap().to_string(),
        ])
        .expect("csv row");
    }
    write_bytes(path, w)
}

fn write_timing_series(rows: &[CsvRow], path: &Path) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "dataset_id",
        "method",
        "psi_time_max",
        "theta_time",
        "decoupled_time",
        "gt_time",
        "speedup",
    ])
    .expect("csv header");
    let mut series: Vec<&CsvRow> = rows.iter().collect();
    series.sort_by(|a, b| {
        (a.dataset_id.as_str(), a.method.as_str()).cmp(&(b.dataset_id.as_str(), b.method.as_str()))
    });
    for r in series {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        w.write_record([
            r.dataset_id.clone(),
            r.method.clone(),
            r.psi_time_max.to_string(),
            r.theta_time.to_string(),
            (r.psi_time_max + r.theta_time).to_string(),
            opt(r.gt_time),
            opt(r.speedup),
        ])
        .expect("csv row");
    }
    write_bytes(path, w)
}

fn write_bytes(path: &Path, w: csv::Writer<Vec<u8>>) -> Result<(), CliError> {
    let bytes = w.into_inner().expect("csv flush");
    fs::write(path, bytes).map_err(|e| CliError::Data(format!("writing {}: {e}", path.display())))?;
    log::info!("wrote {}", path.display());
    Ok(())
}

fn read_rows(path: &Path, rows: &mut Vec<CsvRow>) -> Result<(), CliError> {
    let mut rdr = csv::Reader::from_path(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let headers = rdr
        .headers()
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    if !headers.iter().eq(CSV_HEADER.iter().copied()) {
        return Err(CliError::Data(format!(
            "schema mismatch in {}: expected columns {}, found {}",
            path.display(),
            CSV_HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let col = |name: &str| CSV_HEADER.iter().position(|&h| h == name).unwrap();
    let (c_dataset, c_method) = (col("dataset_id"), col("method"));
    let (c_j, c_p, c_r) = (col("jaccard"), col("precision"), col("recall"));
    let (c_psi, c_theta) = (col("psi_time_max"), col("theta_time"));
    let (c_gt, c_speedup) = (col("gt_time"), col("speedup"));

    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let field = |c: usize| record.get(c).unwrap_or("");
        let opt_f64 = |c: usize| -> Result<Option<f64>, CliError> {
            let raw = field(c);
            if raw.is_empty() {
                return Ok(None);
            }
            raw.parse().map(Some).map_err(|_| {
                CliError::Data(format!(
                    "{} row {}: {:?} is not a number",
                    path.display(),
                    i + 2,
                    raw
                ))
            })
        };
        let req_f64 = |c: usize| -> Result<f64, CliError> {
            opt_f64(c)?.ok_or_else(|| {
                CliError::Data(format!(
                    "{} row {}: column {} must not be empty",
                    path.display(),
                    i + 2,
                    CSV_HEADER[c]
                ))
            })
        };
        rows.push(CsvRow {
            dataset_id: field(c_dataset).to_string(),
            method: field(c_method).to_string(),
            jaccard: opt_f64(c_j)?,
            precision: opt_f64(c_p)?,
            recall: opt_f64(c_r)?,
            psi_time_max: req_f64(c_psi)?,
            theta_time: req_f64(c_theta)?,
            gt_time: opt_f64(c_gt)?,
            speedup: opt_f64(c_speedup)?,
        });
    }
    Ok(())
}
