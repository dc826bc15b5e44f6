//! Echo state networks on top of generated topologies.
//!
//! State update: `s(t+1) = tanh(W_in·u(t+1) + W_rec·s(t))`, with `W_rec` the
//! pruned network rescaled to the target spectral radius and `W_in` nonzero
//! only on the injection rows.

mod analysis;
mod readout;
pub mod spectral;

pub use analysis::{degree_weight_correlation, normalized_readout_weights, pearson};
pub use readout::{
    fit_readout, fit_subset_readout, lstsq_min_norm, lstsq_min_norm_rcond, Readout, ReadoutOptions,
    SubsetReadout,
};
pub use spectral::{scale_spectral_radius, spectral_radius};

use nalgebra::{DMatrix, DVector};
use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CsrMatrix;
use crate::netmetrics::{node_degrees, DegreeVector};
use crate::seed;
use crate::topology::{generate_network, Network, TopologyConfig};

/// Which neurons receive external input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Injection {
    /// The highest-degree neurons, ties to the lower index.
    Hub,
    /// A uniform sample.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EsnConfig {
    pub input_dim: usize,
    pub output_dim: usize,
    pub spec_rad: f64,
    /// Fraction of neurons that receive input.
    pub r_sig: f64,
    pub injection: Injection,
    pub washout: usize,
    /// Fit an intercept in the readout. Off by default.
    #[serde(default)]
    pub bias: bool,
    /// Reservoir size lives here as `topology.n`.
    pub topology: TopologyConfig,
    pub seed: u64,
}

impl Default for EsnConfig {
    fn default() -> Self {
        Self {
            input_dim: 1,
            output_dim: 1,
            spec_rad: 0.9,
            r_sig: 0.1,
            injection: Injection::Hub,
            washout: 0,
            bias: false,
            topology: TopologyConfig::default(),
            seed: 0,
        }
    }
}

impl EsnConfig {
    pub fn n(&self) -> usize {
        self.topology.n
    }

    /// `ceil(r_sig · n)`, ignoring floating-point dust above an integer.
    pub fn input_count(&self) -> usize {
        let x = self.r_sig * self.n() as f64;
        let k = if (x - x.round()).abs() < 1e-9 {
            x.round()
        } else {
            x.ceil()
        };
        k as usize
    }

    pub fn validate(&self) -> Result<()> {
        self.topology.validate()?;
        if self.n() == 0 {
            return Err(Error::InvalidConfig(
                "reservoir size must be positive".into(),
            ));
        }
        if self.input_dim == 0 || self.output_dim == 0 {
            return Err(Error::InvalidConfig(
                "input and output dimensions must be positive".into(),
            ));
        }
        if !(self.r_sig > 0.0 && self.r_sig <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "r_sig {} outside (0, 1]",
                self.r_sig
            )));
        }
        if !(self.spec_rad > 0.0 && self.spec_rad.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "spec_rad {} must be positive",
                self.spec_rad
            )));
        }
        Ok(())
    }
}

/// Hidden states, one row per time step.
#[derive(Debug, Clone, PartialEq)]
pub struct StateMatrix(pub DMatrix<f64>);

impl StateMatrix {
    pub fn steps(&self) -> usize {
        self.0.nrows()
    }

    pub fn last_state(&self) -> Option<DVector<f64>> {
        (self.0.nrows() > 0).then(|| self.0.row(self.0.nrows() - 1).transpose())
    }
}

#[derive(Debug, Clone)]
pub struct Esn {
    pub config: EsnConfig,
    /// `n × input_dim`; rows outside the mask are zero.
    pub w_in: DMatrix<f64>,
    pub w_rec: CsrMatrix,
    pub input_mask: Vec<bool>,
    /// Unscaled topology, kept for degree analysis.
    pub network: Network,
}

/// Indices of the `k` highest-degree nodes, ties broken by lower index.
pub fn hub_injection_indices(deg: &DegreeVector, k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..deg.len()).collect();
    order.sort_by(|&a, &b| deg.0[b].cmp(&deg.0[a]).then(a.cmp(&b)));
    order.truncate(k);
    order.sort_unstable();
    order
}

impl Esn {
    /// Builds a reservoir from `cfg.seed`.
    pub fn new(cfg: &EsnConfig) -> Result<Self> {
        init_esn(cfg, &mut seed::rng_from_seed(cfg.seed))
    }

    pub fn n(&self) -> usize {
        self.w_in.nrows()
    }

    pub fn input_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.input_mask[i]).collect()
    }

    pub fn non_input_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.input_mask[i]).collect()
    }

    pub fn degrees(&self) -> DegreeVector {
        node_degrees(&self.network)
    }

    pub fn w_rec_dense(&self) -> DMatrix<f64> {
        self.w_rec.to_dense()
    }

    /// One update: `tanh(W_in·u + W_rec·s)`.
    pub fn step(&self, state: &DVector<f64>, input: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.n());
        self.step_into(state.as_slice(), input.as_slice(), out.as_mut_slice());
        out
    }

    fn step_into(&self, state: &[f64], input: &[f64], out: &mut [f64]) {
        self.w_rec.mul_vec_into(state, out);
        for (d, &u) in input.iter().enumerate() {
            if u != 0.0 {
                for (o, &w) in out.iter_mut().zip(self.w_in.column(d).iter()) {
                    *o += w * u;
                }
            }
        }
        out.iter_mut().for_each(|v| *v = v.tanh());
    }

    /// Runs the inputs (one row per step) from `s0`. Row `t` of the result is
    /// the state after consuming input row `t`.
    pub fn harvest(&self, inputs: &DMatrix<f64>, s0: &DVector<f64>) -> Result<StateMatrix> {
        let n = self.n();
        if inputs.ncols() != self.w_in.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "input has {} columns, reservoir expects {}",
                inputs.ncols(),
                self.w_in.ncols()
            )));
        }
        if s0.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "initial state length {} vs n = {n}",
                s0.len()
            )));
        }
        let steps = inputs.nrows();
        let mut buf = vec![0.0; steps * n];
        let mut prev = s0.as_slice().to_vec();
        let mut u = vec![0.0; inputs.ncols()];
        for t in 0..steps {
            for (d, v) in u.iter_mut().enumerate() {
                *v = inputs[(t, d)];
            }
            let row = &mut buf[t * n..(t + 1) * n];
            self.step_into(&prev, &u, row);
            prev.copy_from_slice(row);
        }
        Ok(StateMatrix(DMatrix::from_row_slice(steps, n, &buf)))
    }

    pub fn predict(
        &self,
        readout: &Readout,
        inputs: &DMatrix<f64>,
        s0: &DVector<f64>,
    ) -> Result<DMatrix<f64>> {
        let states = self.harvest(inputs, s0)?;
        if readout.w_out.nrows() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "readout has {} rows for n = {}",
                readout.w_out.nrows(),
                self.n()
            )));
        }
        Ok(readout.apply(&states.0))
    }
}

/// Generates the topology, rescales it, draws `W_in ~ U(−1, 1)` and picks
/// the injection rows.
pub fn init_esn<R: Rng + ?Sized>(cfg: &EsnConfig, rng: &mut R) -> Result<Esn> {
    cfg.validate()?;
    let network = generate_network(&cfg.topology, rng)?;
    let w_rec_dense = scale_spectral_radius(&network.weights, cfg.spec_rad)?;
    let n = cfg.n();
    let mut w_in = DMatrix::from_fn(n, cfg.input_dim, |_, _| 0.0);
    for i in 0..n {
        for d in 0..cfg.input_dim {
            w_in[(i, d)] = rng.random_range(-1.0..1.0);
        }
    }
    let k = cfg.input_count();
    let chosen: Vec<usize> = match cfg.injection {
        Injection::Hub => hub_injection_indices(&node_degrees(&network), k),
        Injection::Random => {
            let mut v = index::sample(rng, n, k).into_vec();
            v.sort_unstable();
            v
        }
    };
    let mut input_mask = vec![false; n];
    for i in chosen {
        input_mask[i] = true;
    }
    for (i, _) in input_mask.iter().enumerate().filter(|(_, &m)| !m) {
        w_in.row_mut(i).fill(0.0);
    }
    Ok(Esn {
        config: cfg.clone(),
        w_in,
        w_rec: CsrMatrix::from_dense(&w_rec_dense),
        input_mask,
        network,
    })
}
