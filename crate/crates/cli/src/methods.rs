//! Method-name parsing shared by `run` and `compose`, plus the retention
//! level each method's composition requires.

use mln_core::{AnalysisKind, CcSelection, ClosenessMethod, DegreeMethod, RetentionPolicy};

use crate::CliError;

/// One requested composition, kind-checked at parse time.
#[derive(Debug, Clone, Copy)]
pub enum MethodSpec {
    Degree(DegreeMethod),
    Closeness(ClosenessMethod, CcSelection),
}

impl MethodSpec {
    /// The name used in CSV rows and report tables.
    pub fn label(&self) -> String {
        match self {
            MethodSpec::Degree(m) => m.to_string(),
            MethodSpec::Closeness(m, _) => m.to_string(),
        }
    }
}

const DEGREE_NAMES: &str = "naive, dc-a1, dc-a2, dc-a2-info[:<f>], dc-p1, dc-p2";
const CLOSENESS_NAMES: &str = "naive, cc1, cc2";

/// Expands and validates `--methods` for the given analysis kind. A bare
/// `dc-a2-info` expands into one method per value in `fractions`.
pub fn parse_methods(
    kind: AnalysisKind,
    names: &[String],
    fractions: &[f64],
    top_k: Option<usize>,
) -> Result<Vec<MethodSpec>, CliError> {
    if names.is_empty() {
        return Err(CliError::Usage("at least one --methods name is required".into()));
    }
    for &f in fractions {
        if !(0.0..=1.0).contains(&f) {
            return Err(CliError::Usage(format!(
                "--info-fraction values must be in [0, 1], got {f}"
            )));
        }
    }
    let mut specs = Vec::with_capacity(names.len());
    for name in names {
        match kind {
            AnalysisKind::Degree => parse_degree(name, fractions, &mut specs)?,
            AnalysisKind::Closeness => parse_closeness(name, top_k, &mut specs)?,
        }
    }
    Ok(specs)
}

fn parse_degree(name: &str, fractions: &[f64], out: &mut Vec<MethodSpec>) -> Result<(), CliError> {
    let m = match name {
        "naive" | "naive-or" => DegreeMethod::NaiveOr,
        "dc-a1" => DegreeMethod::DcA1,
        "dc-a2" => DegreeMethod::DcA2,
        "dc-p1" => DegreeMethod::DcP1,
        "dc-p2" => DegreeMethod::DcP2,
        "dc-a2-info" => {
            if fractions.is_empty() {
                return Err(CliError::Usage(
                    "dc-a2-info needs fractions: pass --info-fraction 0,0.5,1 or inline dc-a2-info:0.5"
                        .into(),
                ));
            }
            out.extend(fractions.iter().map(|&f| MethodSpec::Degree(DegreeMethod::DcA2Info(f))));
            return Ok(());
        }
        _ => {
            if let Some(raw) = name.strip_prefix("dc-a2-info:") {
                let f: f64 = raw.parse().map_err(|_| {
                    CliError::Usage(format!("bad fraction in {name:?}; expected dc-a2-info:<f>"))
                })?;
                if !(0.0..=1.0).contains(&f) {
                    return Err(CliError::Usage(format!(
                        "fraction in {name:?} must be in [0, 1]"
                    )));
                }
                DegreeMethod::DcA2Info(f)
            } else if matches!(name, "cc1" | "cc2" | "naive-and") {
                return Err(CliError::Usage(format!(
                    "method {name} composes closeness summaries; run with --kind closeness or feed closeness artifacts"
                )));
            } else {
                return Err(CliError::Usage(format!(
                    "unknown degree method {name:?}; expected one of: {DEGREE_NAMES}"
                )));
            }
        }
    };
    out.push(MethodSpec::Degree(m));
    Ok(())
}

fn parse_closeness(
    name: &str,
    top_k: Option<usize>,
    out: &mut Vec<MethodSpec>,
) -> Result<(), CliError> {
    let selection = match top_k {
        Some(k) => CcSelection::TopK(k),
        None => CcSelection::AboveAverage,
    };
    let m = match name {
        "naive" | "naive-and" => ClosenessMethod::NaiveAnd,
        "cc1" => ClosenessMethod::Cc1,
        "cc2" => ClosenessMethod::Cc2,
        "dc-a1" | "dc-a2" | "dc-p1" | "dc-p2" | "naive-or" => {
            return Err(CliError::Usage(format!(
                "method {name} composes degree summaries; run with --kind degree or feed degree artifacts"
            )));
        }
        _ if name.starts_with("dc-a2-info") => {
            return Err(CliError::Usage(format!(
                "method {name} composes degree summaries; run with --kind degree or feed degree artifacts"
            )));
        }
        _ => {
            return Err(CliError::Usage(format!(
                "unknown closeness method {name:?}; expected one of: {CLOSENESS_NAMES}"
            )));
        }
    };
    out.push(MethodSpec::Closeness(m, selection));
    Ok(())
}

/// The retention the per-layer degree analysis must run with for this
/// method's composition to have what it needs. Closeness summaries always
/// carry their fixed payload, so everything maps to `None` there.
pub fn required_retention(spec: &MethodSpec, seed: u64) -> RetentionPolicy {
    match spec {
        MethodSpec::Degree(DegreeMethod::DcP1 | DegreeMethod::DcP2) => RetentionPolicy::HubsOnly,
        MethodSpec::Degree(DegreeMethod::DcA2Info(f)) => RetentionPolicy::Fraction {
            fraction: *f,
            seed,
        },
        _ => RetentionPolicy::None,
    }
}
