use nalgebra::DMatrix;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetKind {
    OneStep,
    SequenceClassification,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub inputs: DMatrix<f64>,
    pub targets: DMatrix<f64>,
    pub kind: DatasetKind,
    pub meta: BTreeMap<String, String>,
}

impl Dataset {
    pub fn from_columns(inputs: &[f64], targets: &[f64], kind: DatasetKind) -> Self {
        Self {
            inputs: DMatrix::from_column_slice(inputs.len(), 1, inputs),
            targets: DMatrix::from_column_slice(targets.len(), 1, targets),
            kind,
            meta: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.inputs.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rows(&self, start: usize, count: usize) -> Self {
        Self {
            inputs: self.inputs.rows(start, count).into_owned(),
            targets: self.targets.rows(start, count).into_owned(),
            kind: self.kind,
            meta: self.meta.clone(),
        }
    }

    /// First `n_train` rows and the following `n_test`.
    pub fn split(&self, n_train: usize, n_test: usize) -> Result<(Self, Self)> {
        let requested = n_train + n_test;
        if requested > self.len() {
            return Err(Error::InsufficientLength {
                requested,
                available: self.len(),
            });
        }
        Ok((self.rows(0, n_train), self.rows(n_train, n_test)))
    }
}

/// Pairs `series[t] → series[t+1]` and splits them into consecutive train and
/// test spans. A series of `T + 1` values supplies `T` pairs.
pub fn make_one_step_dataset(
    series: &[f64],
    n_train: usize,
    n_test: usize,
) -> Result<(Dataset, Dataset)> {
    let pairs = series.len().saturating_sub(1);
    if n_train + n_test > pairs {
        return Err(Error::InsufficientLength {
            requested: n_train + n_test,
            available: pairs,
        });
    }
    Dataset::from_columns(&series[..pairs], &series[1..], DatasetKind::OneStep)
        .split(n_train, n_test)
}

/// Single-column CSV with a `value` header.
pub fn write_series_csv(path: &Path, series: &[f64]) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "value")?;
    for v in series {
        writeln!(out, "{v:.16e}")?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_point_series() {
        let (train, test) = make_one_step_dataset(&[1.0, 2.0, 3.0], 1, 1).unwrap();
        assert_eq!((train.inputs[(0, 0)], train.targets[(0, 0)]), (1.0, 2.0));
        assert_eq!((test.inputs[(0, 0)], test.targets[(0, 0)]), (2.0, 3.0));
    }

    #[test]
    fn exact_consumption_and_overflow() {
        let s: Vec<f64> = (0..11).map(f64::from).collect();
        let (train, test) = make_one_step_dataset(&s, 6, 4).unwrap();
        assert_eq!(train.len() + test.len(), 10);
        assert!(matches!(
            make_one_step_dataset(&s, 6, 5),
            Err(Error::InsufficientLength {
                requested: 11,
                available: 10
            })
        ));
    }

    #[test]
    fn alignment_and_identity_predictor() {
        let s: Vec<f64> = (0..40).map(|t| (t as f64 * 0.7).sin()).collect();
        let (train, _) = make_one_step_dataset(&s, 39, 0).unwrap();
        for t in 0..38 {
            assert_eq!(train.inputs[(t + 1, 0)], train.targets[(t, 0)]);
        }
        let (c, _) = make_one_step_dataset(&[0.3; 5], 4, 0).unwrap();
        assert_eq!(c.inputs, c.targets);
    }

    #[test]
    fn series_csv_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        let s = [0.1, -2.5e-7, 1.0 / 3.0];
        write_series_csv(&p, &s).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        let back: Vec<f64> = text.lines().skip(1).map(|l| l.parse().unwrap()).collect();
        assert_eq!(back, s);
    }
}
