use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Root mean square error over all entries.
pub fn rmse(pred: &[f64], target: &[f64]) -> Result<f64> {
    if pred.len() != target.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} predictions vs {} targets",
            pred.len(),
            target.len()
        )));
    }
    if pred.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sse: f64 = pred
        .iter()
        .zip(target)
        .map(|(p, t)| (p - t) * (p - t))
        .sum();
    Ok((sse / pred.len() as f64).sqrt())
}

fn argmax(row: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (k, v) in row.enumerate() {
        if v > best.1 {
            best = (k, v);
        }
    }
    best.0
}

/// Each row of `scores` votes for its argmax class. The most voted class
/// wins; ties go to the larger summed score, then to the lower class.
pub fn majority_vote(scores: &DMatrix<f64>) -> usize {
    let classes = scores.ncols();
    let mut votes = vec![0usize; classes];
    for row in scores.row_iter() {
        votes[argmax(row.iter().copied())] += 1;
    }
    let top = votes.iter().copied().max().unwrap_or(0);
    let mut best: Option<(usize, f64)> = None;
    for c in (0..classes).filter(|&c| votes[c] == top) {
        let total: f64 = scores.column(c).sum();
        if best.is_none_or(|(_, b)| total > b) {
            best = Some((c, total));
        }
    }
    best.map_or(0, |(c, _)| c)
}

/// Fraction of images whose majority vote matches the label.
pub fn majority_vote_accuracy(step_scores: &[DMatrix<f64>], labels: &[u8]) -> Result<f64> {
    if step_scores.len() != labels.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} score matrices vs {} labels",
            step_scores.len(),
            labels.len()
        )));
    }
    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }
    let correct = step_scores
        .iter()
        .zip(labels)
        .filter(|(s, &l)| majority_vote(s) == l as usize)
        .count();
    Ok(correct as f64 / labels.len() as f64)
}
