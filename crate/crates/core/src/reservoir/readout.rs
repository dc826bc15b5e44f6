//! Closed-form linear readouts.
//!
//! The readout is the minimum-norm least-squares solution of `S·W = Y`.
//! Singular values below `1e-10·σ_max` are treated as zero, so the result
//! equals `(SᵀS)⁻¹SᵀY` whenever `SᵀS` is invertible and stays well defined
//! when it is not.

use nalgebra::{DMatrix, DVector};

use super::StateMatrix;
use crate::error::{Error, Result};

/// Relative singular-value cutoff.
pub const RCOND: f64 = 1e-10;

/// Linear map from states (plus an optional bias) to outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Readout {
    /// `n × output_dim`
    pub w_out: DMatrix<f64>,
    pub bias: Option<DVector<f64>>,
}

impl Readout {
    pub fn zeros(n: usize, output_dim: usize) -> Self {
        Self {
            w_out: DMatrix::zeros(n, output_dim),
            bias: None,
        }
    }

    pub fn output_dim(&self) -> usize {
        self.w_out.ncols()
    }

    /// `S·W (+ b)`, one output row per state row.
    pub fn apply(&self, states: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = states * &self.w_out;
        if let Some(b) = &self.bias {
            for mut row in out.row_iter_mut() {
                row += b.transpose();
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReadoutOptions {
    /// Leading rows dropped before fitting.
    pub washout: usize,
    /// Fit an intercept column.
    pub bias: bool,
}

/// Minimum-norm least-squares solution `X` of `A·X = B`.
pub fn lstsq_min_norm(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    lstsq_min_norm_rcond(a, b, RCOND)
}

/// As [`lstsq_min_norm`] with singular values below `rcond·σ_max` dropped.
pub fn lstsq_min_norm_rcond(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    rcond: f64,
) -> Result<DMatrix<f64>> {
    let (rows, cols) = a.shape();
    if b.nrows() != rows {
        return Err(Error::DimensionMismatch(format!(
            "{rows} design rows vs {} target rows",
            b.nrows()
        )));
    }
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyInput);
    }
    // Tall systems are reduced to an n×n triangular factor first: A = QR
    // and A⁺ = R⁺Qᵀ for Q with orthonormal columns.
    let (core, rhs) = if rows > cols {
        let qr = a.clone().qr();
        let mut qtb = b.clone();
        qr.q_tr_mul(&mut qtb);
        (qr.r(), qtb.rows(0, cols).into_owned())
    } else {
        (a.clone(), b.clone())
    };
    let svd = core.svd(true, true);
    let u = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested Vᵀ");
    let sigma_max = svd.singular_values.max();
    let cutoff = rcond * sigma_max;

    let mut utb = u.transpose() * rhs;
    for (k, &s) in svd.singular_values.iter().enumerate() {
        let inv = if s > cutoff && s > 0.0 { 1.0 / s } else { 0.0 };
        utb.row_mut(k).scale_mut(inv);
    }
    Ok(v_t.transpose() * utb)
}

/// Fits `W_out` on `states[washout..]` against `targets[washout..]`.
pub fn fit_readout(
    states: &StateMatrix,
    targets: &DMatrix<f64>,
    opts: ReadoutOptions,
) -> Result<Readout> {
    let s = &states.0;
    if s.nrows() != targets.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "{} state rows vs {} target rows",
            s.nrows(),
            targets.nrows()
        )));
    }
    if opts.washout >= s.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "washout {} leaves no rows out of {}",
            opts.washout,
            s.nrows()
        )));
    }
    let t = s.nrows() - opts.washout;
    let n = s.ncols();
    let y = targets.rows(opts.washout, t).into_owned();
    if opts.bias {
        let mut design = DMatrix::from_element(t, n + 1, 1.0);
        design.columns_mut(0, n).copy_from(&s.rows(opts.washout, t));
        let w = lstsq_min_norm(&design, &y)?;
        Ok(Readout {
            w_out: w.rows(0, n).into_owned(),
            bias: Some(w.row(n).transpose()),
        })
    } else {
        let design = s.rows(opts.washout, t).into_owned();
        Ok(Readout {
            w_out: lstsq_min_norm(&design, &y)?,
            bias: None,
        })
    }
}

/// A readout over a subset of state columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetReadout {
    pub indices: Vec<usize>,
    pub readout: Readout,
}

impl SubsetReadout {
    pub fn apply(&self, states: &DMatrix<f64>) -> DMatrix<f64> {
        self.readout.apply(&states.select_columns(&self.indices))
    }
}

pub fn fit_subset_readout(
    states: &StateMatrix,
    targets: &DMatrix<f64>,
    subset: &[usize],
    opts: ReadoutOptions,
) -> Result<SubsetReadout> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = states.0.ncols();
    if let Some(&bad) = subset.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    let selected = StateMatrix(states.0.select_columns(subset));
    Ok(SubsetReadout {
        indices: subset.to_vec(),
        readout: fit_readout(&selected, targets, opts)?,
    })
}
