//! Composition: estimating centrality sets for a combined network from
//! per-layer summaries alone.
//!
//! Nothing here may look at a graph. Every function takes two summaries,
//! which is what makes the expensive per-layer analysis reusable across
//! compositions. Degree methods target the OR-combined network, closeness
//! methods the AND-combined one.
//!
//! Threshold comparisons against an average are done in exact integer
//! arithmetic wherever the quantities are integral (degrees, doubled degree
//! estimates, neighborhood-union sizes), so results never depend on float
//! rounding.

use std::time::{Duration, Instant};

use crate::analyze::at_or_above_mean;
use crate::error::{MlnError, Result};
use crate::graph::VertexId;
use crate::sets;
use crate::summary::{ClosenessSummary, DegreeSummary, RetentionPolicy};

/// Degree-side composition methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeMethod {
    /// Union of the per-layer hub sets.
    NaiveOr,
    /// Estimated degree: max of the per-layer degrees.
    DcA1,
    /// Estimated degree: midpoint of the max and the capped sum.
    DcA2,
    /// DcA2, upgraded to exact united-neighborhood sizes for the retained
    /// fraction of vertices.
    DcA2Info(f64),
    /// Hub-neighborhood union sizes vs the larger per-layer average degree.
    DcP1,
    /// Like DcP1 but against the average of per-vertex max degrees.
    DcP2,
}

impl std::fmt::Display for DegreeMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DegreeMethod::NaiveOr => write!(f, "naive"),
            DegreeMethod::DcA1 => write!(f, "dc-a1"),
            DegreeMethod::DcA2 => write!(f, "dc-a2"),
            DegreeMethod::DcA2Info(fr) => write!(f, "dc-a2-info:{fr}"),
            DegreeMethod::DcP1 => write!(f, "dc-p1"),
            DegreeMethod::DcP2 => write!(f, "dc-p2"),
        }
    }
}

/// Output of a degree-side composition.
#[derive(Debug, Clone)]
pub struct DegreeComposition {
    pub method: DegreeMethod,
    /// Per-vertex estimated combined degree, for methods that build one.
    pub est_deg: Option<Vec<f64>>,
    pub avg_est_deg: Option<f64>,
    /// Estimated hub set of the OR-combined network, sorted.
    pub hubs: Vec<VertexId>,
    pub theta_time: Duration,
}

fn check_n(nx: usize, ny: usize) -> Result<usize> {
    if nx != ny {
        return Err(MlnError::VertexCountMismatch {
            left: nx,
            right: ny,
        });
    }
    Ok(nx)
}

/// Baseline: hubs of the combination guessed as the union of layer hubs.
pub fn naive_or(sx: &DegreeSummary, sy: &DegreeSummary) -> Result<DegreeComposition> {
    check_n(sx.n, sy.n)?;
    let start = Instant::now();
    let hubs = sets::union(&sx.hubs, &sy.hubs);
    Ok(DegreeComposition {
        method: DegreeMethod::NaiveOr,
        est_deg: None,
        avg_est_deg: None,
        hubs,
        theta_time: start.elapsed(),
    })
}

/// Hub selection over integral per-vertex estimates:
/// `u` is a hub iff `n * est(u) >= sum(est)`. Exact; ties included.
fn hubs_of_estimates(est: &[u64]) -> (Vec<VertexId>, u64) {
    let n = est.len() as u64;
    let sum: u64 = est.iter().sum();
    let hubs = est
        .iter()
        .enumerate()
        .filter(|&(_, &e)| n * e >= sum)
        .map(|(u, _)| u as VertexId)
        .collect();
    (hubs, sum)
}

/// Estimates each combined degree as the larger of the two layer degrees.
/// A guaranteed lower bound on the true OR degree.
pub fn dc_a1(sx: &DegreeSummary, sy: &DegreeSummary) -> Result<DegreeComposition> {
    let n = check_n(sx.n, sy.n)?;
    let start = Instant::now();
    let est: Vec<u64> = (0..n)
        .map(|u| sx.deg[u].max(sy.deg[u]) as u64)
        .collect();
    let (hubs, sum) = hubs_of_estimates(&est);
    Ok(DegreeComposition {
        method: DegreeMethod::DcA1,
        est_deg: Some(est.iter().map(|&e| e as f64).collect()),
        avg_est_deg: Some(if n == 0 { 0.0 } else { sum as f64 / n as f64 }),
        hubs,
        theta_time: start.elapsed(),
    })
}

// The true OR degree of u lies between max(dx, dy) and min(dx + dy, n - 1).
// DcA2 estimates it as the midpoint. The halves are kept exact by working
// with doubled values throughout; the factor 2 cancels in the hub rule.
fn dc_a2_doubled(dx: u32, dy: u32, n: usize) -> u64 {
    let hi = (dx as u64 + dy as u64).min(n as u64 - 1);
    dx.max(dy) as u64 + hi
}

/// Estimates each combined degree as the midpoint of its lower bound
/// (the larger layer degree) and upper bound (the capped degree sum).
pub fn dc_a2(sx: &DegreeSummary, sy: &DegreeSummary) -> Result<DegreeComposition> {
    let n = check_n(sx.n, sy.n)?;
    let start = Instant::now();
    let est2: Vec<u64> = (0..n)
        .map(|u| dc_a2_doubled(sx.deg[u], sy.deg[u], n))
        .collect();
    let (hubs, sum2) = hubs_of_estimates(&est2);
    Ok(DegreeComposition {
        method: DegreeMethod::DcA2,
        est_deg: Some(est2.iter().map(|&e| e as f64 / 2.0).collect()),
        avg_est_deg: Some(if n == 0 {
            0.0
        } else {
            sum2 as f64 / (2.0 * n as f64)
        }),
        hubs,
        theta_time: start.elapsed(),
    })
}

fn retention_label(p: &RetentionPolicy) -> String {
    p.to_string()
}

/// DcA2 with retained information: vertices whose full neighborhood was
/// kept in *both* summaries get their exact combined degree
/// `|NBD_x(u) + NBD_y(u)|`; everyone else falls back to the DcA2 midpoint.
/// At fraction 1.0 the result equals ground truth exactly.
///
/// Both summaries must have been analyzed with the same retained subset
/// (same fraction and seed, or both `all`), and `fraction` must match it.
pub fn dc_a2_with_info(
    sx: &DegreeSummary,
    sy: &DegreeSummary,
    fraction: f64,
) -> Result<DegreeComposition> {
    let n = check_n(sx.n, sy.n)?;
    let compatible = match (&sx.retention, &sy.retention) {
        (
            RetentionPolicy::Fraction { fraction: fx, seed: seedx },
            RetentionPolicy::Fraction { fraction: fy, seed: seedy },
        ) => fx == fy && seedx == seedy && *fx == fraction,
        (RetentionPolicy::All, RetentionPolicy::All) => fraction == 1.0,
        _ => false,
    };
    if !compatible {
        return Err(MlnError::RetentionMismatch {
            left: retention_label(&sx.retention),
            right: retention_label(&sy.retention),
        });
    }
    let (tx, ty) = match (&sx.full_neighborhoods, &sy.full_neighborhoods) {
        (Some(tx), Some(ty)) => (tx, ty),
        _ => {
            return Err(MlnError::MissingRetainedNeighborhoods {
                method: "dc-a2-info",
            })
        }
    };

    let start = Instant::now();
    let est2: Vec<u64> = (0..n)
        .map(|u| {
            let u = u as VertexId;
            match (tx.get(u), ty.get(u)) {
                (Some(nx), Some(ny)) => 2 * sets::union_len(nx, ny) as u64,
                _ => dc_a2_doubled(sx.deg[u as usize], sy.deg[u as usize], n),
            }
        })
        .collect();
    let (hubs, sum2) = hubs_of_estimates(&est2);
    Ok(DegreeComposition {
        method: DegreeMethod::DcA2Info(fraction),
        est_deg: Some(est2.iter().map(|&e| e as f64 / 2.0).collect()),
        avg_est_deg: Some(if n == 0 {
            0.0
        } else {
            sum2 as f64 / (2.0 * n as f64)
        }),
        hubs,
        theta_time: start.elapsed(),
    })
}

fn hub_neighborhood_tables<'a>(
    sx: &'a DegreeSummary,
    sy: &'a DegreeSummary,
    method: &'static str,
) -> Result<(
    &'a crate::summary::NeighborhoodTable,
    &'a crate::summary::NeighborhoodTable,
)> {
    match (&sx.hub_neighborhoods, &sy.hub_neighborhoods) {
        (Some(tx), Some(ty)) => Ok((tx, ty)),
        _ => Err(MlnError::MissingHubNeighborhoods { method }),
    }
}

/// Precision-first selection: candidates are the layer hubs, and a candidate
/// survives iff its united hub-neighborhood size reaches the larger of the
/// two per-layer average degrees. A vertex with no retained neighborhood in
/// a layer contributes nothing from that layer.
pub fn dc_p1(sx: &DegreeSummary, sy: &DegreeSummary) -> Result<DegreeComposition> {
    let n = check_n(sx.n, sy.n)?;
    let (tx, ty) = hub_neighborhood_tables(sx, sy, "dc-p1")?;
    let start = Instant::now();
    // avg threshold = max(deg_sum_x, deg_sum_y) / n, compared exactly
    let threshold_sum = sx.deg_sum.max(sy.deg_sum);
    let candidates = sets::union(&sx.hubs, &sy.hubs);
    let hubs = candidates
        .into_iter()
        .filter(|&u| {
            let nx = tx.get(u).unwrap_or(&[]);
            let ny = ty.get(u).unwrap_or(&[]);
            n as u64 * sets::union_len(nx, ny) as u64 >= threshold_sum
        })
        .collect();
    Ok(DegreeComposition {
        method: DegreeMethod::DcP1,
        est_deg: None,
        avg_est_deg: Some(if n == 0 {
            0.0
        } else {
            threshold_sum as f64 / n as f64
        }),
        hubs,
        theta_time: start.elapsed(),
    })
}

/// Like [`dc_p1`], but the threshold is the average of the per-vertex
/// max-degree estimates instead of the larger layer average.
pub fn dc_p2(sx: &DegreeSummary, sy: &DegreeSummary) -> Result<DegreeComposition> {
    let n = check_n(sx.n, sy.n)?;
    let (tx, ty) = hub_neighborhood_tables(sx, sy, "dc-p2")?;
    let start = Instant::now();
    let est: Vec<u64> = (0..n)
        .map(|u| sx.deg[u].max(sy.deg[u]) as u64)
        .collect();
    let threshold_sum: u64 = est.iter().sum();
    let candidates = sets::union(&sx.hubs, &sy.hubs);
    let hubs = candidates
        .into_iter()
        .filter(|&u| {
            let nx = tx.get(u).unwrap_or(&[]);
            let ny = ty.get(u).unwrap_or(&[]);
            n as u64 * sets::union_len(nx, ny) as u64 >= threshold_sum
        })
        .collect();
    Ok(DegreeComposition {
        method: DegreeMethod::DcP2,
        est_deg: Some(est.iter().map(|&e| e as f64).collect()),
        avg_est_deg: Some(if n == 0 {
            0.0
        } else {
            threshold_sum as f64 / n as f64
        }),
        hubs,
        theta_time: start.elapsed(),
    })
}

/// Closeness-side composition methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosenessMethod {
    NaiveAnd,
    Cc1,
    Cc2,
}

impl std::fmt::Display for ClosenessMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosenessMethod::NaiveAnd => write!(f, "naive"),
            ClosenessMethod::Cc1 => write!(f, "cc1"),
            ClosenessMethod::Cc2 => write!(f, "cc2"),
        }
    }
}

/// Output of a closeness-side composition.
#[derive(Debug, Clone)]
pub struct ClosenessComposition {
    pub method: ClosenessMethod,
    /// Per-vertex estimated combined distance sum, for methods that build one.
    pub est_sum_dist: Option<Vec<u64>>,
    /// Per-layer degree-to-distance ratios (x then y), where used.
    pub deg_dist_ratio: Option<[Vec<f64>; 2]>,
    pub avg_deg_dist_ratio: Option<f64>,
    /// Estimated closeness-central set of the AND-combined network, sorted.
    pub cc_nodes: Vec<VertexId>,
    pub theta_time: Duration,
}

/// Baseline: intersection of the per-layer closeness-central sets.
pub fn naive_and_cc(sx: &ClosenessSummary, sy: &ClosenessSummary) -> Result<ClosenessComposition> {
    check_n(sx.n, sy.n)?;
    let start = Instant::now();
    let cc_nodes = sets::intersect(&sx.cc_nodes, &sy.cc_nodes);
    Ok(ClosenessComposition {
        method: ClosenessMethod::NaiveAnd,
        est_sum_dist: None,
        deg_dist_ratio: None,
        avg_deg_dist_ratio: None,
        cc_nodes,
        theta_time: start.elapsed(),
    })
}

/// Knobs for [`cc1`]. Defaults: common central nodes are always kept, and a
/// neighbor intersection must have at least 2 members to be pulled in.
#[derive(Debug, Clone, Copy)]
pub struct Cc1Config {
    pub overlap_threshold: usize,
    pub include_common: bool,
}

impl Default for Cc1Config {
    fn default() -> Self {
        Cc1Config {
            overlap_threshold: 2,
            include_common: true,
        }
    }
}

/// Expands the common per-layer central nodes with neighbors that look
/// central in both layers.
///
/// A vertex's ratio in a layer is its distance sum over the *smaller* of
/// its two layer degrees; vertices with a zero min-degree get an infinite
/// sentinel, stay out of the averages, and can never qualify as central
/// neighbors. For each common central node, neighbors whose ratio beats the
/// shared average in both layers are intersected, and the intersection is
/// added wholesale when it is at least `overlap_threshold` strong.
pub fn cc1(
    sx: &ClosenessSummary,
    sy: &ClosenessSummary,
    config: &Cc1Config,
) -> Result<ClosenessComposition> {
    let n = check_n(sx.n, sy.n)?;
    let start = Instant::now();

    let ratio = |s: &ClosenessSummary, u: usize| -> f64 {
        let min_deg = sx.deg[u].min(sy.deg[u]);
        if min_deg == 0 {
            f64::INFINITY
        } else {
            s.sum_dist[u] as f64 / min_deg as f64
        }
    };
    let ratio_x: Vec<f64> = (0..n).map(|u| ratio(sx, u)).collect();
    let ratio_y: Vec<f64> = (0..n).map(|u| ratio(sy, u)).collect();

    let finite_mean = |vals: &[f64]| -> Option<f64> {
        let mut sum = 0.0;
        let mut count = 0usize;
        for &v in vals {
            if v.is_finite() {
                sum += v;
                count += 1;
            }
        }
        (count > 0).then(|| sum / count as f64)
    };
    let avg_ratio = match (finite_mean(&ratio_x), finite_mean(&ratio_y)) {
        (Some(a), Some(b)) => a.max(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => 0.0,
    };

    let common = sets::intersect(&sx.cc_nodes, &sy.cc_nodes);
    let mut out: Vec<VertexId> = Vec::new();
    for &u in &common {
        if config.include_common {
            out.push(u);
        }
        // u is central in both layers, so both tables retain its neighborhood
        let central_neighbors = |table: &crate::summary::NeighborhoodTable, ratios: &[f64]| {
            table
                .get(u)
                .unwrap_or(&[])
                .iter()
                .copied()
                .filter(|&v| ratios[v as usize] < avg_ratio)
                .collect::<Vec<_>>()
        };
        let cand_x = central_neighbors(&sx.cc_neighborhoods, &ratio_x);
        let cand_y = central_neighbors(&sy.cc_neighborhoods, &ratio_y);
        let shared = sets::intersect(&cand_x, &cand_y);
        if shared.len() >= config.overlap_threshold {
            out.extend_from_slice(&shared);
        }
    }
    out.sort_unstable();
    out.dedup();

    Ok(ClosenessComposition {
        method: ClosenessMethod::Cc1,
        est_sum_dist: None,
        deg_dist_ratio: Some([ratio_x, ratio_y]),
        avg_deg_dist_ratio: Some(avg_ratio),
        cc_nodes: out,
        theta_time: start.elapsed(),
    })
}

/// How [`cc2`] turns estimated closeness values into a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcSelection {
    /// Everything at or above the mean estimated value.
    AboveAverage,
    /// The k highest estimated values; ties break toward lower vertex ids.
    TopK(usize),
}

/// Estimates each vertex's combined distance sum as the larger of its two
/// layer distance sums (distances only grow when edges are intersected
/// away), scores it as `(n-1) / est_sum_dist`, and selects.
pub fn cc2(
    sx: &ClosenessSummary,
    sy: &ClosenessSummary,
    selection: CcSelection,
) -> Result<ClosenessComposition> {
    let n = check_n(sx.n, sy.n)?;
    let start = Instant::now();
    if n < 2 {
        // degenerate: no distances to speak of; everyone qualifies
        return Ok(ClosenessComposition {
            method: ClosenessMethod::Cc2,
            est_sum_dist: Some(vec![0; n]),
            deg_dist_ratio: None,
            avg_deg_dist_ratio: None,
            cc_nodes: (0..n as VertexId).collect(),
            theta_time: start.elapsed(),
        });
    }
    let est: Vec<u64> = (0..n).map(|u| sx.sum_dist[u].max(sy.sum_dist[u])).collect();
    // est > 0 whenever n >= 2: any vertex either reaches someone (positive
    // finite sum) or pays the unreachable penalty
    let values: Vec<f64> = est.iter().map(|&e| (n - 1) as f64 / e as f64).collect();
    let cc_nodes = match selection {
        CcSelection::AboveAverage => at_or_above_mean(&values),
        CcSelection::TopK(k) => {
            let mut order: Vec<VertexId> = (0..n as VertexId).collect();
            order.sort_by(|&a, &b| {
                values[b as usize]
                    .partial_cmp(&values[a as usize])
                    .unwrap()
                    .then(a.cmp(&b))
            });
            let mut picked: Vec<VertexId> = order.into_iter().take(k).collect();
            picked.sort_unstable();
            picked
        }
    };
    Ok(ClosenessComposition {
        method: ClosenessMethod::Cc2,
        est_sum_dist: Some(est),
        deg_dist_ratio: None,
        avg_deg_dist_ratio: None,
        cc_nodes,
        theta_time: start.elapsed(),
    })
}
