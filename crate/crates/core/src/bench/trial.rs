use nalgebra::{DMatrix, DVector};
use rand::seq::index;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::metrics::{majority_vote_accuracy, rmse};
use crate::error::{Error, Result};
use crate::reservoir::{
    degree_weight_correlation, fit_readout, normalized_readout_weights, Esn, EsnConfig, Injection,
    Readout, ReadoutOptions, StateMatrix,
};
use crate::seed::{derive, rng_from_seed};
use crate::tasks::{
    mackey_glass, make_one_step_dataset, mnist_sequences, narma10, Dataset, MackeyGlassConfig,
    MnistData, NarmaConfig, Task,
};
use crate::topology::{PruneMode, TopologyConfig};

const MODEL_KEY: u64 = 0x6d6f_6465_6c00;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Random topology, random injection.
    Esn,
    /// Hub topology, input on the hubs.
    #[serde(rename = "hubesn")]
    HubEsn,
    /// Hub topology, random injection.
    #[serde(rename = "hubesn_rand")]
    HubEsnRand,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Esn, Model::HubEsn, Model::HubEsnRand];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Esn => "esn",
            Model::HubEsn => "hubesn",
            Model::HubEsnRand => "hubesn_rand",
        }
    }

    pub fn id(self) -> u64 {
        match self {
            Model::Esn => 1,
            Model::HubEsn => 2,
            Model::HubEsnRand => 3,
        }
    }

    pub fn topology(self) -> PruneMode {
        match self {
            Model::Esn => PruneMode::Random,
            Model::HubEsn | Model::HubEsnRand => PruneMode::Hub,
        }
    }

    pub fn injection(self) -> Injection {
        match self {
            Model::HubEsn => Injection::Hub,
            Model::Esn | Model::HubEsnRand => Injection::Random,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "esn" => Ok(Model::Esn),
            "hubesn" => Ok(Model::HubEsn),
            "hubesn_rand" => Ok(Model::HubEsnRand),
            other => Err(format!("unknown model `{other}`")),
        }
    }
}

/// Everything in an [`EsnConfig`] that the model choice does not decide.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelParams {
    pub spec_rad: f64,
    pub r_sig: f64,
    pub washout: usize,
    pub bias: bool,
    /// `n`, `mode` and `seed` are overwritten per trial.
    pub topology: TopologyConfig,
}

impl Default for ModelParams {
    fn default() -> Self {
        let d = EsnConfig::default();
        Self {
            spec_rad: d.spec_rad,
            r_sig: d.r_sig,
            washout: d.washout,
            bias: d.bias,
            topology: d.topology,
        }
    }
}

impl ModelParams {
    pub fn esn_config(
        &self,
        model: Model,
        n: usize,
        input_dim: usize,
        output_dim: usize,
        seed: u64,
    ) -> EsnConfig {
        EsnConfig {
            input_dim,
            output_dim,
            spec_rad: self.spec_rad,
            r_sig: self.r_sig,
            injection: model.injection(),
            washout: self.washout,
            bias: self.bias,
            topology: TopologyConfig {
                n,
                mode: model.topology(),
                seed,
                ..self.topology.clone()
            },
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialSpec {
    pub task: Task,
    pub model: Model,
    pub n: usize,
    pub n_train: usize,
    pub n_test: usize,
    pub trial: usize,
    pub base_seed: u64,
}

/// Seed of the dataset shared by every model at this trial index.
pub fn dataset_seed(base: u64, task: Task, n_train: usize, trial: usize) -> u64 {
    derive(base, &[task.id(), n_train as u64, trial as u64])
}

/// Seed for topology, input weights and mask of one model.
pub fn model_seed(spec: &TrialSpec) -> u64 {
    let ds = dataset_seed(spec.base_seed, spec.task, spec.n_train, spec.trial);
    derive(ds, &[MODEL_KEY, spec.model.id(), spec.n as u64])
}

impl TrialSpec {
    pub fn dataset_seed(&self) -> u64 {
        dataset_seed(self.base_seed, self.task, self.n_train, self.trial)
    }

    pub fn model_seed(&self) -> u64 {
        model_seed(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub spec: TrialSpec,
    /// Dataset seed of the trial.
    pub seed: u64,
    /// RMSE for series tasks, accuracy for MNIST.
    pub score: f64,
    pub degree_weight_r: Option<f64>,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct TrialContext<'a> {
    pub params: &'a ModelParams,
    pub mnist: Option<&'a MnistData>,
    pub degree_weight: bool,
}

/// Train and test spans of a series task. Mackey-Glass ignores the seed;
/// the series is normalized over the emitted span.
pub fn time_series_split(
    task: Task,
    n_train: usize,
    n_test: usize,
    seed: u64,
) -> Result<(Dataset, Dataset)> {
    match task {
        Task::MackeyGlass => {
            let mg = mackey_glass(&MackeyGlassConfig::with_length(n_train + n_test + 1));
            make_one_step_dataset(&mg.normalized, n_train, n_test)
        }
        Task::Narma10 => {
            let cfg = NarmaConfig {
                length: n_train + n_test,
                seed,
                ..Default::default()
            };
            narma10(&cfg, &mut rng_from_seed(seed))?
                .to_dataset()
                .split(n_train, n_test)
        }
        Task::Mnist => Err(Error::InvalidConfig("mnist is not a series task".into())),
    }
}

fn correlation(esn: &Esn, readout: &Readout, states: &StateMatrix) -> Result<Option<f64>> {
    let w = normalized_readout_weights(readout, states)?;
    match degree_weight_correlation(&w, &esn.degrees()) {
        Ok(r) => Ok(Some(r)),
        Err(Error::ConstantVector) => Ok(None),
        Err(e) => Err(e),
    }
}

fn series_trial(spec: &TrialSpec, ctx: &TrialContext) -> Result<(f64, Option<f64>)> {
    let (train, test) =
        time_series_split(spec.task, spec.n_train, spec.n_test, spec.dataset_seed())?;
    let cfg = ctx
        .params
        .esn_config(spec.model, spec.n, 1, 1, spec.model_seed());
    let esn = Esn::new(&cfg)?;
    let states = esn.harvest(&train.inputs, &DVector::zeros(spec.n))?;
    let opts = ReadoutOptions {
        washout: cfg.washout,
        bias: cfg.bias,
    };
    let readout = fit_readout(&states, &train.targets, opts)?;
    let s_last = states
        .last_state()
        .unwrap_or_else(|| DVector::zeros(spec.n));
    let pred = readout.apply(&esn.harvest(&test.inputs, &s_last)?.0);
    let score = rmse(pred.as_slice(), test.targets.as_slice())?;
    let r = if ctx.degree_weight {
        correlation(&esn, &readout, &states)?
    } else {
        None
    };
    Ok((score, r))
}

fn mnist_trial(spec: &TrialSpec, ctx: &TrialContext) -> Result<(f64, Option<f64>)> {
    let data = ctx
        .mnist
        .ok_or_else(|| Error::InvalidConfig("mnist trial without loaded data".into()))?;
    let wanted = spec.n_train + spec.n_test;
    if wanted > data.len() {
        return Err(Error::InsufficientLength {
            requested: wanted,
            available: data.len(),
        });
    }
    let picked =
        index::sample(&mut rng_from_seed(spec.dataset_seed()), data.len(), wanted).into_vec();
    let train = mnist_sequences(data, &picked[..spec.n_train])?;
    let test = mnist_sequences(data, &picked[spec.n_train..])?;

    let cfg = ctx
        .params
        .esn_config(spec.model, spec.n, 28, 10, spec.model_seed());
    let esn = Esn::new(&cfg)?;
    let zero = DVector::zeros(spec.n);
    let steps = 28;
    let mut s = DMatrix::zeros(steps * train.len(), spec.n);
    let mut y = DMatrix::zeros(steps * train.len(), 10);
    for (k, seq) in train.iter().enumerate() {
        s.rows_mut(k * steps, steps)
            .copy_from(&esn.harvest(&seq.inputs, &zero)?.0);
        y.rows_mut(k * steps, steps).copy_from(&seq.targets);
    }
    let states = StateMatrix(s);
    let opts = ReadoutOptions {
        washout: 0,
        bias: cfg.bias,
    };
    let readout = fit_readout(&states, &y, opts)?;
    let scores = test
        .iter()
        .map(|seq| Ok(readout.apply(&esn.harvest(&seq.inputs, &zero)?.0)))
        .collect::<Result<Vec<_>>>()?;
    let labels: Vec<u8> = test.iter().map(|s| s.label).collect();
    let acc = majority_vote_accuracy(&scores, &labels)?;
    let r = if ctx.degree_weight {
        correlation(&esn, &readout, &states)?
    } else {
        None
    };
    Ok((acc, r))
}

/// Builds the model, fits the readout on the training span and scores the
/// test span. Series tasks continue the test harvest from the last
/// training state; MNIST restarts from zero for every image.
pub fn run_trial(spec: &TrialSpec, ctx: &TrialContext) -> Result<TrialResult> {
    let start = Instant::now();
    let (score, degree_weight_r) = match spec.task {
        Task::MackeyGlass | Task::Narma10 => series_trial(spec, ctx)?,
        Task::Mnist => mnist_trial(spec, ctx)?,
    };
    if !score.is_finite() {
        return Err(Error::NonFiniteScore(format!(
            "{} {} n={} n_train={} trial {}",
            spec.task, spec.model, spec.n, spec.n_train, spec.trial
        )));
    }
    Ok(TrialResult {
        spec: *spec,
        seed: spec.dataset_seed(),
        score,
        degree_weight_r,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}
