//! Readout analysis of one trained series model: per-neuron weights against
//! degree, and input / non-input subset readouts.

use nalgebra::{DMatrix, DVector};

use super::metrics::rmse;
use super::trial::{time_series_split, ModelParams, TrialSpec};
use crate::error::{Error, Result};
use crate::reservoir::{
    degree_weight_correlation, fit_readout, fit_subset_readout, normalized_readout_weights, Esn,
    ReadoutOptions, StateMatrix,
};
use crate::tasks::Task;

#[derive(Debug, Clone, PartialEq)]
pub struct NeuronRow {
    pub neuron: usize,
    pub degree: usize,
    /// One entry per output.
    pub raw_weights: Vec<f64>,
    pub normalized_weight: f64,
    pub is_input: bool,
}

/// Train and test RMSE of readouts restricted to one group of neurons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsetScores {
    pub train_rmse: f64,
    pub test_rmse: f64,
}

#[derive(Debug, Clone)]
pub struct ReadoutAnalysis {
    pub rows: Vec<NeuronRow>,
    /// Pearson r of normalized weight against degree; absent when either is
    /// constant.
    pub correlation: Option<f64>,
    pub test_rmse: f64,
    pub input: SubsetScores,
    pub non_input: SubsetScores,
    pub train_states: StateMatrix,
    pub test_states: StateMatrix,
}

fn subset_scores(
    train: &StateMatrix,
    test: &StateMatrix,
    y_train: &DMatrix<f64>,
    y_test: &DMatrix<f64>,
    subset: &[usize],
    opts: ReadoutOptions,
) -> Result<SubsetScores> {
    let r = fit_subset_readout(train, y_train, subset, opts)?;
    let w = opts.washout;
    let fit = r.apply(&train.0);
    let t = train.0.nrows() - w;
    Ok(SubsetScores {
        train_rmse: rmse(
            fit.rows(w, t).into_owned().as_slice(),
            y_train.rows(w, t).into_owned().as_slice(),
        )?,
        test_rmse: rmse(r.apply(&test.0).as_slice(), y_test.as_slice())?,
    })
}

/// Trains the model described by `spec` on a series task and reports the
/// readout structure.
pub fn analyze_readout(spec: &TrialSpec, params: &ModelParams) -> Result<ReadoutAnalysis> {
    if spec.task == Task::Mnist {
        return Err(Error::InvalidConfig(
            "readout analysis supports series tasks only".into(),
        ));
    }
    let (train, test) =
        time_series_split(spec.task, spec.n_train, spec.n_test, spec.dataset_seed())?;
    let cfg = params.esn_config(spec.model, spec.n, 1, 1, spec.model_seed());
    let esn = Esn::new(&cfg)?;
    let opts = ReadoutOptions {
        washout: cfg.washout,
        bias: cfg.bias,
    };
    let train_states = esn.harvest(&train.inputs, &DVector::zeros(spec.n))?;
    let s_last = train_states
        .last_state()
        .unwrap_or_else(|| DVector::zeros(spec.n));
    let test_states = esn.harvest(&test.inputs, &s_last)?;
    let readout = fit_readout(&train_states, &train.targets, opts)?;
    let test_rmse = rmse(
        readout.apply(&test_states.0).as_slice(),
        test.targets.as_slice(),
    )?;

    let w_norm = normalized_readout_weights(&readout, &train_states)?;
    let deg = esn.degrees();
    let correlation = match degree_weight_correlation(&w_norm, &deg) {
        Ok(r) => Some(r),
        Err(Error::ConstantVector) => None,
        Err(e) => return Err(e),
    };
    let rows = (0..spec.n)
        .map(|i| NeuronRow {
            neuron: i,
            degree: deg.0[i],
            raw_weights: readout.w_out.row(i).iter().copied().collect(),
            normalized_weight: w_norm[i],
            is_input: esn.input_mask[i],
        })
        .collect();

    let input = subset_scores(
        &train_states,
        &test_states,
        &train.targets,
        &test.targets,
        &esn.input_indices(),
        opts,
    )?;
    let non_input = subset_scores(
        &train_states,
        &test_states,
        &train.targets,
        &test.targets,
        &esn.non_input_indices(),
        opts,
    )?;
    Ok(ReadoutAnalysis {
        rows,
        correlation,
        test_rmse,
        input,
        non_input,
        train_states,
        test_states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{run_trial, Model, TrialContext};

    #[test]
    fn rows_cover_every_neuron_and_match_trial() {
        let spec = TrialSpec {
            task: Task::MackeyGlass,
            model: Model::HubEsn,
            n: 80,
            n_train: 300,
            n_test: 100,
            trial: 0,
            base_seed: 2,
        };
        let params = ModelParams::default();
        let a = analyze_readout(&spec, &params).unwrap();
        assert_eq!(a.rows.len(), 80);
        assert_eq!(a.rows.iter().filter(|r| r.is_input).count(), 8);
        let ctx = TrialContext {
            params: &params,
            mnist: None,
            degree_weight: true,
        };
        let t = run_trial(&spec, &ctx).unwrap();
        assert_eq!(a.test_rmse.to_bits(), t.score.to_bits());
        assert_eq!(a.correlation, t.degree_weight_r);
        assert!(a.non_input.train_rmse <= a.input.train_rmse * 10.0);
        assert_eq!(a.train_states.steps(), 300);
        assert_eq!(a.test_states.steps(), 100);
    }
}
