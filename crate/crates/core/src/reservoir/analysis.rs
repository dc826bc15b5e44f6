//! Readout-weight analysis: how much each neuron contributes to predictions
//! and whether that contribution tracks its degree.

use super::{Readout, StateMatrix};
use crate::error::{Error, Result};
use crate::netmetrics::DegreeVector;

/// `|w_out_i| · Σ_t |s_{t,i}|` per neuron. For multi-output readouts the L2
/// norm of row `i` stands in for `|w_out_i|`.
pub fn normalized_readout_weights(readout: &Readout, states: &StateMatrix) -> Result<Vec<f64>> {
    let n = readout.w_out.nrows();
    if states.0.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "readout has {n} rows, states have {} columns",
            states.0.ncols()
        )));
    }
    Ok((0..n)
        .map(|i| {
            let w = readout.w_out.row(i).norm();
            let activity: f64 = states.0.column(i).iter().map(|s| s.abs()).sum();
            w * activity
        })
        .collect())
}

/// Pearson product-moment correlation.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} samples",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::EmptyInput);
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ConstantVector);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

pub fn degree_weight_correlation(w_norm: &[f64], deg: &DegreeVector) -> Result<f64> {
    pearson(w_norm, &deg.as_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reservoir::{fit_readout, ReadoutOptions};
    use crate::seed::rng_from_seed;
    use nalgebra::DMatrix;
    use rand::Rng;

    #[test]
    fn normalized_weight_examples() {
        let states = StateMatrix(DMatrix::from_column_slice(2, 1, &[0.5, -0.5]));
        let r = Readout {
            w_out: DMatrix::from_element(1, 1, 2.0),
            bias: None,
        };
        assert_eq!(normalized_readout_weights(&r, &states).unwrap(), vec![2.0]);
        let zero = Readout::zeros(1, 1);
        assert_eq!(
            normalized_readout_weights(&zero, &states).unwrap(),
            vec![0.0]
        );
    }

    #[test]
    fn multi_output_uses_row_norm() {
        let states = StateMatrix(DMatrix::from_column_slice(1, 1, &[1.0]));
        let r = Readout {
            w_out: DMatrix::from_row_slice(1, 2, &[3.0, 4.0]),
            bias: None,
        };
        assert_eq!(normalized_readout_weights(&r, &states).unwrap(), vec![5.0]);
    }

    #[test]
    fn invariant_under_state_rescaling() {
        let mut rng = rng_from_seed(3);
        let s = DMatrix::from_fn(50, 4, |_, _| rng.random_range(-0.5..0.5));
        let y = DMatrix::from_fn(50, 1, |_, _| rng.random_range(-1.0..1.0));
        let a = StateMatrix(s.clone());
        let b = StateMatrix(&s * 1.7);
        let ra = fit_readout(&a, &y, ReadoutOptions::default()).unwrap();
        let rb = fit_readout(&b, &y, ReadoutOptions::default()).unwrap();
        assert!((&ra.w_out / 1.7 - &rb.w_out).abs().max() < 1e-10);
        let wa = normalized_readout_weights(&ra, &a).unwrap();
        let wb = normalized_readout_weights(&rb, &b).unwrap();
        for (x, y) in wa.iter().zip(&wb) {
            assert!((x - y).abs() < 1e-10 * x.abs().max(1.0));
        }
    }

    #[test]
    fn pearson_examples() {
        let v = [1.0, 4.0, 2.0, 8.0];
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        assert!((pearson(&v, &v).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&v, &neg).unwrap() + 1.0).abs() < 1e-15);
        assert!((pearson(&[1.0, 2.0, 3.0], &[6.0, 4.0, 5.0]).unwrap() + 0.5).abs() < 1e-15);
        assert!(matches!(
            pearson(&[1.0, 1.0], &[2.0, 3.0]),
            Err(Error::ConstantVector)
        ));
    }

    #[test]
    fn degree_correlation_uses_degrees() {
        let deg = DegreeVector(vec![1, 2, 3]);
        assert!((degree_weight_correlation(&[6.0, 4.0, 5.0], &deg).unwrap() + 0.5).abs() < 1e-15);
    }
}
