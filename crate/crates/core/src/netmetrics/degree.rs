use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::Network;

/// Total degree (in + out) per node on the binarized graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeVector(pub Vec<usize>);

impl DegreeVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&d| d as f64).collect()
    }
}

pub fn node_degrees(net: &Network) -> DegreeVector {
    let n = net.n();
    let mut deg = vec![0usize; n];
    for j in 0..n {
        for i in 0..n {
            if i != j && net.weights[(i, j)] != 0.0 {
                deg[i] += 1;
                deg[j] += 1;
            }
        }
    }
    DegreeVector(deg)
}

/// Population standard deviation over mean.
pub fn heterogeneity_cv(deg: &DegreeVector) -> Result<f64> {
    let (mean, sd) = crate::linalg::mean_sd(&deg.as_f64());
    if !(mean > 0.0) {
        return Err(Error::ZeroMeanDegree);
    }
    Ok(sd / mean)
}

pub fn unconnected_count(net: &Network) -> usize {
    node_degrees(net).0.iter().filter(|&&d| d == 0).count()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub start: f64,
    pub bin_width: f64,
    pub counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub mean: f64,
    pub sd: f64,
    pub skewness: f64,
    /// Mean and SD of `ln(degree)` over nodes with degree ≥ 1.
    pub log_mean: f64,
    pub log_sd: f64,
    pub histogram: Histogram,
}

fn moments(values: &[f64]) -> (f64, f64, f64) {
    let (mean, sd) = crate::linalg::mean_sd(values);
    let skew = if sd > 0.0 {
        let n = values.len() as f64;
        values
            .iter()
            .map(|v| ((v - mean) / sd).powi(3))
            .sum::<f64>()
            / n
    } else {
        0.0
    };
    (mean, sd, skew)
}

/// Linear-interpolated quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Moments of the degree sample plus a Freedman–Diaconis histogram with bin
/// width at least 1.
pub fn degree_summary(deg: &DegreeVector) -> DegreeSummary {
    let values = deg.as_f64();
    if values.is_empty() {
        return DegreeSummary {
            mean: f64::NAN,
            sd: f64::NAN,
            skewness: f64::NAN,
            log_mean: f64::NAN,
            log_sd: f64::NAN,
            histogram: Histogram {
                start: 0.0,
                bin_width: 1.0,
                counts: Vec::new(),
            },
        };
    }
    let (mean, sd, skewness) = moments(&values);
    let logs: Vec<f64> = values
        .iter()
        .filter(|&&d| d >= 1.0)
        .map(|d| d.ln())
        .collect();
    let (log_mean, log_sd) = crate::linalg::mean_sd(&logs);

    let mut sorted = values.clone();
    sorted.sort_by(f64::total_cmp);
    let iqr = quantile(&sorted, 0.75) - quantile(&sorted, 0.25);
    let fd = 2.0 * iqr / (values.len() as f64).cbrt();
    let bin_width = fd.max(1.0);
    let start = sorted[0];
    let bins = ((sorted[sorted.len() - 1] - start) / bin_width).floor() as usize + 1;
    let mut counts = vec![0usize; bins];
    for v in &values {
        let b = (((v - start) / bin_width).floor() as usize).min(bins - 1);
        counts[b] += 1;
    }

    DegreeSummary {
        mean,
        sd,
        skewness,
        log_mean,
        log_sd,
        histogram: Histogram {
            start,
            bin_width,
            counts,
        },
    }
}
