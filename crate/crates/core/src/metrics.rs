//! Set-accuracy metrics for heuristic output vs ground truth.

use serde::{Deserialize, Serialize};

use crate::error::{MlnError, Result};
use crate::graph::VertexId;
use crate::sets;

/// Confusion counts and derived scores for an estimated vertex set against
/// the true one.
///
/// Conventions: two empty sets agree perfectly (all scores 1.0). An empty
/// estimate against a non-empty truth scores precision 0.0 rather than the
/// vacuous 1.0, so methods cannot win by predicting nothing; symmetrically,
/// a non-empty estimate against an empty truth scores recall 0.0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetComparison {
    pub true_pos: usize,
    pub false_pos: usize,
    pub false_neg: usize,
    pub jaccard: f64,
    pub precision: f64,
    pub recall: f64,
}

/// Compares two sorted, deduplicated vertex sets.
pub fn compare_sets(estimated: &[VertexId], truth: &[VertexId]) -> SetComparison {
    debug_assert!(estimated.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(truth.windows(2).all(|w| w[0] < w[1]));
    let true_pos = sets::intersect_len(estimated, truth);
    let false_pos = estimated.len() - true_pos;
    let false_neg = truth.len() - true_pos;

    let ratio = |num: usize, den: usize| -> f64 {
        if den == 0 {
            // empty vs empty: perfect agreement by convention
            if true_pos + false_pos + false_neg == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            num as f64 / den as f64
        }
    };
    SetComparison {
        true_pos,
        false_pos,
        false_neg,
        jaccard: ratio(true_pos, true_pos + false_pos + false_neg),
        precision: ratio(true_pos, true_pos + false_pos),
        recall: ratio(true_pos, true_pos + false_neg),
    }
}

/// Mean scores over a batch of comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub count: usize,
    pub mean_jaccard: f64,
    pub mean_precision: f64,
    pub mean_recall: f64,
}

pub fn summarize(rows: &[SetComparison]) -> Result<SuiteSummary> {
    if rows.is_empty() {
        return Err(MlnError::EmptyMetricInput);
    }
    let n = rows.len() as f64;
    Ok(SuiteSummary {
        count: rows.len(),
        mean_jaccard: rows.iter().map(|r| r.jaccard).sum::<f64>() / n,
        mean_precision: rows.iter().map(|r| r.precision).sum::<f64>() / n,
        mean_recall: rows.iter().map(|r| r.recall).sum::<f64>() / n,
    })
}

/// Mean relative gain of a heuristic over a baseline, row by row:
/// `mean((h - b) / b)`, so +1.0 means the heuristic doubled the baseline.
/// Rows where the baseline is zero carry no relative information and are
/// skipped; `None` if no row remains.
pub fn relative_gain(heuristic: &[f64], baseline: &[f64]) -> Result<Option<f64>> {
    if heuristic.len() != baseline.len() {
        return Err(MlnError::RowCountMismatch {
            left: heuristic.len(),
            right: baseline.len(),
        });
    }
    if heuristic.is_empty() {
        return Err(MlnError::EmptyMetricInput);
    }
    let mut sum = 0.0;
    let mut count = 0usize;
    for (&h, &b) in heuristic.iter().zip(baseline) {
        if b != 0.0 {
            sum += (h - b) / b;
            count += 1;
        }
    }
    Ok((count > 0).then(|| sum / count as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_overlap_counts() {
        // the step-4 fixture numbers: estimate {0,1} vs truth {0,1,2}
        let c = compare_sets(&[0, 1], &[0, 1, 2]);
        assert_eq!((c.true_pos, c.false_pos, c.false_neg), (2, 0, 1));
        assert_eq!(c.jaccard, 2.0 / 3.0);
        assert_eq!(c.precision, 1.0);
        assert_eq!(c.recall, 2.0 / 3.0);
    }

    #[test]
    fn identical_and_disjoint_sets() {
        let c = compare_sets(&[1, 5, 9], &[1, 5, 9]);
        assert_eq!((c.jaccard, c.precision, c.recall), (1.0, 1.0, 1.0));
        let c = compare_sets(&[0, 2], &[1, 3]);
        assert_eq!((c.jaccard, c.precision, c.recall), (0.0, 0.0, 0.0));
    }

    #[test]
    fn empty_conventions() {
        let c = compare_sets(&[], &[]);
        assert_eq!((c.jaccard, c.precision, c.recall), (1.0, 1.0, 1.0));

        // empty estimate, real truth: no credit for silence
        let c = compare_sets(&[], &[4, 7]);
        assert_eq!((c.jaccard, c.precision, c.recall), (0.0, 0.0, 0.0));

        // non-empty estimate, empty truth
        let c = compare_sets(&[4], &[]);
        assert_eq!((c.jaccard, c.precision, c.recall), (0.0, 0.0, 0.0));
    }

    #[test]
    fn precision_one_bounds_the_others() {
        let c = compare_sets(&[3, 4], &[3, 4, 5, 6]);
        assert_eq!(c.precision, 1.0);
        assert_eq!(c.jaccard, c.recall);
    }

    #[test]
    fn summary_means() {
        let rows = vec![compare_sets(&[0], &[0]), compare_sets(&[0], &[1])];
        let s = summarize(&rows).unwrap();
        assert_eq!(s.count, 2);
        assert_eq!(s.mean_jaccard, 0.5);
        assert!(matches!(
            summarize(&[]).unwrap_err(),
            MlnError::EmptyMetricInput
        ));
    }

    #[test]
    fn gain_vs_baseline() {
        assert_eq!(relative_gain(&[0.9], &[0.45]).unwrap(), Some(1.0));
        // zero-baseline rows are skipped
        assert_eq!(
            relative_gain(&[0.9, 0.5], &[0.45, 0.0]).unwrap(),
            Some(1.0)
        );
        assert_eq!(relative_gain(&[0.9], &[0.0]).unwrap(), None);
        assert!(matches!(
            relative_gain(&[0.9], &[0.45, 0.5]).unwrap_err(),
            MlnError::RowCountMismatch { .. }
        ));
    }
}
