//! Black-box tests of the `mln` binary: exit codes, CSV schema, fixture
//! values, and determinism across reruns and thread counts.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn mln(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mln"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary spawns")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn assert_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        stdout(out),
        stderr(out)
    );
}

/// Parses a comma-separated results file; none of our fields need quoting.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .expect("csv has a header")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("column {name} in {header:?}"))
}

/// Star + path fixture: hubs of the combined graph are {0, 1, 2}.
fn write_m1(dir: &Path) -> PathBuf {
    let d = dir.join("m1");
    fs::create_dir_all(&d).unwrap();
    fs::write(d.join("L1.edges"), "0 1\n0 2\n0 3\n").unwrap();
    fs::write(d.join("L2.edges"), "0 1\n1 2\n").unwrap();
    fs::write(
        d.join("meta.json"),
        r#"{
  "id": "m1",
  "n": 4,
  "edges_l1": 3,
  "edges_l2": 2,
  "layers": {
    "plan": "separate",
    "l1": {"kind": "normal", "mean_deg": 1.5, "sd_deg": 0.0},
    "l2": {"kind": "normal", "mean_deg": 1.0, "sd_deg": 0.0}
  },
  "manifest_seed": 0,
  "dataset_seed": 0,
  "generator_version": "0.1.0"
}"#,
    )
    .unwrap();
    d
}

fn write_small_manifest(dir: &Path) -> PathBuf {
    let path = dir.join("manifest.json");
    fs::write(
        &path,
        r#"{
  "seed": 7,
  "datasets": [
    {"id": "g1", "n": 300, "layers": {"plan": "separate",
      "l1": {"kind": "rmat", "edges": 900},
      "l2": {"kind": "rmat", "edges": 600}}},
    {"id": "g2", "n": 250, "layers": {"plan": "split",
      "base": {"kind": "rmat", "edges": 1000},
      "mode": {"mode": "partition", "p1": 0.7, "p2": 0.3}}}
  ]
}"#,
    )
    .unwrap();
    path
}

const EXPECTED_HEADER: &str =
    "dataset_id,n,edges_l1,edges_l2,edges_agg,method,jaccard,precision,recall,\
     psi_time_max,theta_time,gt_time,speedup";

#[test]
fn help_exits_zero_and_bad_usage_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    assert_code(&mln(tmp.path(), &["--help"]), 0);
    assert_code(&mln(tmp.path(), &[]), 1);
    assert_code(&mln(tmp.path(), &["frobnicate"]), 1);
    assert_code(&mln(tmp.path(), &["run", "--kind", "degree"]), 1);
}

#[test]
fn generate_writes_listed_datasets_and_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let manifest = write_small_manifest(tmp.path());
    let manifest = manifest.to_str().unwrap();

    let out = mln(tmp.path(), &["generate", "--manifest", manifest, "--out", "a"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out).lines().count(), 2);
    let out = mln(tmp.path(), &["generate", "--manifest", manifest, "--out", "b"]);
    assert_code(&out, 0);

    for id in ["g1", "g2"] {
        for file in ["L1.edges", "L2.edges", "meta.json"] {
            let a = fs::read(tmp.path().join("a").join(id).join(file)).unwrap();
            let b = fs::read(tmp.path().join("b").join(id).join(file)).unwrap();
            assert_eq!(a, b, "{id}/{file} differs between reruns");
        }
    }
}

#[test]
fn generate_without_out_dir_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let manifest = write_small_manifest(tmp.path());
    let out = mln(
        tmp.path(),
        &["generate", "--manifest", manifest.to_str().unwrap()],
    );
    assert_code(&out, 1);
    assert!(stderr(&out).contains("--out"));
}

#[test]
fn generate_empty_manifest_is_a_data_error() {
    let tmp = tempfile::tempdir().unwrap();
    let manifest = tmp.path().join("empty.json");
    fs::write(&manifest, r#"{"seed": 1, "datasets": []}"#).unwrap();
    let out = mln(
        tmp.path(),
        &["generate", "--manifest", manifest.to_str().unwrap(), "--out", "a"],
    );
    assert_code(&out, 2);
    assert!(stderr(&out).contains("no datasets"));
}

#[test]
fn run_reproduces_fixture_values() {
    let tmp = tempfile::tempdir().unwrap();
    let m1 = write_m1(tmp.path());
    let out = mln(
        tmp.path(),
        &[
            "run",
            m1.to_str().unwrap(),
            "--kind",
            "degree",
            "--methods",
            "naive,dc-a1,dc-p1",
            "--out",
            "results.csv",
        ],
    );
    assert_code(&out, 0);

    let text = fs::read_to_string(tmp.path().join("results.csv")).unwrap();
    let (header, rows) = parse_csv(&text);
    assert_eq!(header.join(","), EXPECTED_HEADER.replace(' ', ""));
    assert_eq!(rows.len(), 3);

    let get = |row: &[String], name: &str| row[column(&header, name)].clone();
    for row in &rows {
        assert_eq!(get(row, "dataset_id"), "m1");
        assert_eq!(get(row, "n"), "4");
        assert_eq!(get(row, "edges_agg"), "4");
        let method = get(row, "method");
        let jaccard: f64 = get(row, "jaccard").parse().unwrap();
        let precision: f64 = get(row, "precision").parse().unwrap();
        let recall: f64 = get(row, "recall").parse().unwrap();
        match method.as_str() {
            // estimated hubs {0, 1} against the true {0, 1, 2}
            "dc-a1" | "dc-p1" => {
                assert_eq!(jaccard, 2.0 / 3.0);
                assert_eq!(precision, 1.0);
                assert_eq!(recall, 2.0 / 3.0);
            }
            "naive" => {
                assert_eq!(jaccard, 1.0);
                assert_eq!(precision, 1.0);
                assert_eq!(recall, 1.0);
            }
            other => panic!("unexpected method {other}"),
        }
        // the speedup column must be exactly gt / (psi_max + theta)
        let psi: f64 = get(row, "psi_time_max").parse().unwrap();
        let theta: f64 = get(row, "theta_time").parse().unwrap();
        let gt: f64 = get(row, "gt_time").parse().unwrap();
        let speedup_cell = get(row, "speedup");
        if speedup_cell.is_empty() {
            assert_eq!(psi + theta, 0.0);
        } else {
            assert_eq!(speedup_cell.parse::<f64>().unwrap(), gt / (psi + theta));
        }
    }

    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("results.json")).unwrap())
            .unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["kind"], "degree");
    assert_eq!(json["suite"]["naive"]["mean_jaccard"], 1.0);
}

#[test]
fn run_expands_info_fractions_and_full_information_is_exact() {
    let tmp = tempfile::tempdir().unwrap();
    let m1 = write_m1(tmp.path());
    let out = mln(
        tmp.path(),
        &[
            "run",
            m1.to_str().unwrap(),
            "--kind",
            "degree",
            "--methods",
            "dc-a2-info",
            "--info-fraction",
            "0,0.25,0.5,0.75,1",
            "--out",
            "sweep.csv",
        ],
    );
    assert_code(&out, 0);
    let text = fs::read_to_string(tmp.path().join("sweep.csv")).unwrap();
    let (header, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 5);
    let methods: Vec<String> = rows
        .iter()
        .map(|r| r[column(&header, "method")].clone())
        .collect();
    assert_eq!(
        methods,
        ["dc-a2-info:0", "dc-a2-info:0.25", "dc-a2-info:0.5", "dc-a2-info:0.75", "dc-a2-info:1"]
    );
    let last_jaccard: f64 = rows[4][column(&header, "jaccard")].parse().unwrap();
    assert_eq!(last_jaccard, 1.0);
}

#[test]
fn run_metric_columns_are_thread_invariant() {
    let tmp = tempfile::tempdir().unwrap();
    let manifest = write_small_manifest(tmp.path());
    let out = mln(
        tmp.path(),
        &["generate", "--manifest", manifest.to_str().unwrap(), "--out", "data"],
    );
    assert_code(&out, 0);

    let mut metrics: Vec<BTreeMap<(String, String), Vec<String>>> = Vec::new();
    for (threads, file) in [("1", "t1.csv"), ("4", "t4.csv")] {
        let out = mln(
            tmp.path(),
            &[
                "run", "data", "--kind", "degree",
                "--methods", "naive,dc-a1,dc-a2,dc-p1,dc-p2",
                "--threads", threads, "--out", file,
            ],
        );
        assert_code(&out, 0);
        let text = fs::read_to_string(tmp.path().join(file)).unwrap();
        let (header, rows) = parse_csv(&text);
        let mut by_key = BTreeMap::new();
        for row in rows {
            let key = (
                row[column(&header, "dataset_id")].clone(),
                row[column(&header, "method")].clone(),
            );
            let vals = ["jaccard", "precision", "recall", "edges_agg"]
                .iter()
                .map(|c| row[column(&header, c)].clone())
                .collect();
            by_key.insert(key, vals);
        }
        metrics.push(by_key);
    }
    assert_eq!(metrics[0].len(), 10);
    assert_eq!(metrics[0], metrics[1]);
}

#[test]
fn run_rejects_method_kind_mismatch() {
    let tmp = tempfile::tempdir().unwrap();
    let m1 = write_m1(tmp.path());
    let out = mln(
        tmp.path(),
        &["run", m1.to_str().unwrap(), "--kind", "degree", "--methods", "cc2"],
    );
    assert_code(&out, 1);
    assert!(stderr(&out).contains("closeness"));

    let out = mln(
        tmp.path(),
        &["run", m1.to_str().unwrap(), "--kind", "closeness", "--methods", "dc-a1"],
    );
    assert_code(&out, 1);
    assert!(stderr(&out).contains("degree"));

    let out = mln(
        tmp.path(),
        &["run", m1.to_str().unwrap(), "--kind", "degree", "--methods", "frobnicate"],
    );
    assert_code(&out, 1);
    assert!(stderr(&out).contains("unknown degree method"));
}

#[test]
fn run_missing_dataset_is_a_data_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = mln(
        tmp.path(),
        &["run", "nowhere", "--kind", "degree", "--methods", "naive"],
    );
    assert_code(&out, 2);
}

#[test]
fn gt_cap_leaves_accuracy_columns_empty() {
    let tmp = tempfile::tempdir().unwrap();
    let m1 = write_m1(tmp.path());
    let out = mln(
        tmp.path(),
        &[
            "run",
            m1.to_str().unwrap(),
            "--kind",
            "degree",
            "--methods",
            "naive,dc-a1",
            "--gt-cap",
            "2",
            "--out",
            "capped.csv",
        ],
    );
    assert_code(&out, 0);
    let text = fs::read_to_string(tmp.path().join("capped.csv")).unwrap();
    let (header, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 2);
    for row in &rows {
        for cell in ["jaccard", "precision", "recall", "gt_time", "speedup", "edges_agg"] {
            assert_eq!(row[column(&header, cell)], "", "{cell} should be empty");
        }
        assert!(!row[column(&header, "psi_time_max")].is_empty());
        assert!(!row[column(&header, "theta_time")].is_empty());
    }
}

#[test]
fn report_means_gains_and_series_files() {
    let tmp = tempfile::tempdir().unwrap();
    let m1 = write_m1(tmp.path());
    let out = mln(
        tmp.path(),
        &[
            "run", m1.to_str().unwrap(), "--kind", "degree",
            "--methods", "naive,dc-a1", "--out", "results.csv",
        ],
    );
    assert_code(&out, 0);

    let out = mln(
        tmp.path(),
        &["report", "results.csv", "--baseline", "naive", "--out", "rep"],
    );
    assert_code(&out, 0);
    assert!(stdout(&out).contains("baseline"));

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("rep/summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["schema_version"], 1);
    assert_eq!(summary["methods"]["naive"]["mean_jaccard"], 1.0);
    assert_eq!(
        summary["methods"]["naive"]["gain_vs_baseline_pct"],
        serde_json::Value::Null
    );
    let dc_a1_mean = summary["methods"]["dc-a1"]["mean_jaccard"].as_f64().unwrap();
    assert_eq!(dc_a1_mean, 2.0 / 3.0);
    let gain = summary["methods"]["dc-a1"]["gain_vs_baseline_pct"].as_f64().unwrap();
    assert!((gain - (2.0 / 3.0 - 1.0) * 100.0).abs() < 1e-9);

    let acc = fs::read_to_string(tmp.path().join("rep/accuracy_series.csv")).unwrap();
    assert!(acc.starts_with("dataset_id,method,jaccard"));
    assert_eq!(acc.lines().count(), 3);
    let timing = fs::read_to_string(tmp.path().join("rep/timing_series.csv")).unwrap();
    assert!(timing.starts_with("dataset_id,method,psi_time_max,theta_time,decoupled_time,gt_time,speedup"));
    assert_eq!(timing.lines().count(), 3);

    // duplicated input leaves the per-method means unchanged
    let out = mln(
        tmp.path(),
        &["report", "results.csv", "results.csv", "--baseline", "naive", "--out", "rep2"],
    );
    assert_code(&out, 0);
    let doubled: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("rep2/summary.json")).unwrap())
            .unwrap();
    for method in ["naive", "dc-a1"] {
        for field in ["mean_jaccard", "mean_precision", "mean_recall", "gain_vs_baseline_pct"] {
            assert_eq!(
                summary["methods"][method][field],
                doubled["methods"][method][field],
                "{method}.{field} changed when the same CSV was passed twice"
            );
        }
    }
}

#[test]
fn report_rejects_schema_mismatch_and_unknown_baseline() {
    let tmp = tempfile::tempdir().unwrap();
    let m1 = write_m1(tmp.path());
    let out = mln(
        tmp.path(),
        &["run", m1.to_str().unwrap(), "--kind", "degree", "--methods", "naive", "--out", "r.csv"],
    );
    assert_code(&out, 0);

    let out = mln(tmp.path(), &["report", "r.csv", "--baseline", "bogus"]);
    assert_code(&out, 2);
    assert!(stderr(&out).contains("baseline"));

    let text = fs::read_to_string(tmp.path().join("r.csv")).unwrap();
    fs::write(tmp.path().join("bad.csv"), text.replace("jaccard", "jacc")).unwrap();
    let out = mln(tmp.path(), &["report", "bad.csv"]);
    assert_code(&out, 2);
    assert!(stderr(&out).contains("schema mismatch"));
}

#[test]
fn analyze_then_compose_matches_direct_run() {
    let tmp = tempfile::tempdir().unwrap();
    let m1 = write_m1(tmp.path());
    let m1 = m1.to_str().unwrap();

    let out = mln(
        tmp.path(),
        &["analyze", m1, "--kind", "degree", "--retain", "hubs-only", "--out", "psi"],
    );
    assert_code(&out, 0);
    let x = tmp.path().join("psi/psi-L1-degree.json");
    let y = tmp.path().join("psi/psi-L2-degree.json");
    assert!(x.is_file() && y.is_file());

    let out = mln(
        tmp.path(),
        &[
            "compose", x.to_str().unwrap(), y.to_str().unwrap(),
            "--method", "dc-p1", "--out", "comp.json",
        ],
    );
    assert_code(&out, 0);
    assert!(stdout(&out).contains("dc-p1: 2 vertices"));
    let comp: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("comp.json")).unwrap()).unwrap();
    assert_eq!(comp["nodes"], serde_json::json!([0, 1]));

    // a closeness method cannot consume degree artifacts
    let out = mln(
        tmp.path(),
        &["compose", x.to_str().unwrap(), y.to_str().unwrap(), "--method", "cc2"],
    );
    assert_code(&out, 1);

    let out = mln(
        tmp.path(),
        &["analyze", m1, "--kind", "closeness", "--out", "psi-cc"],
    );
    assert_code(&out, 0);
    let cx = tmp.path().join("psi-cc/psi-L1-closeness.json");
    let cy = tmp.path().join("psi-cc/psi-L2-closeness.json");
    let out = mln(
        tmp.path(),
        &[
            "compose", cx.to_str().unwrap(), cy.to_str().unwrap(),
            "--method", "cc2", "--out", "cc2.json",
        ],
    );
    assert_code(&out, 0);
    let comp: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("cc2.json")).unwrap()).unwrap();
    assert_eq!(comp["nodes"], serde_json::json!([0, 1, 2]));

    // mixing artifact kinds is a data error
    let out = mln(
        tmp.path(),
        &["compose", x.to_str().unwrap(), cy.to_str().unwrap(), "--method", "cc2"],
    );
    assert_code(&out, 2);
}

#[test]
fn analyze_fraction_retention_needs_a_fraction() {
    let tmp = tempfile::tempdir().unwrap();
    let m1 = write_m1(tmp.path());
    let out = mln(
        tmp.path(),
        &["analyze", m1.to_str().unwrap(), "--kind", "degree", "--retain", "fraction"],
    );
    assert_code(&out, 1);
    assert!(stderr(&out).contains("--fraction"));
}

#[test]
fn ground_truth_reports_exact_sets() {
    let tmp = tempfile::tempdir().unwrap();
    let m1 = write_m1(tmp.path());
    let out = mln(
        tmp.path(),
        &["ground-truth", m1.to_str().unwrap(), "--kind", "degree", "--out", "gt.json"],
    );
    assert_code(&out, 0);
    assert!(stdout(&out).contains("3 of 4"));
    let gt: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("gt.json")).unwrap()).unwrap();
    assert_eq!(gt["nodes"], serde_json::json!([0, 1, 2]));
    assert_eq!(gt["edges_agg"], 4);
}

#[test]
fn run_prints_json_when_asked() {
    let tmp = tempfile::tempdir().unwrap();
    let m1 = write_m1(tmp.path());
    let out = mln(
        tmp.path(),
        &[
            "run", m1.to_str().unwrap(), "--kind", "degree",
            "--methods", "naive", "--format", "json",
        ],
    );
    assert_code(&out, 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["rows"][0]["method"], "naive");
}
