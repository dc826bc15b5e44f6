//! Seeded ESN / HubESN / HubESN-rand trials, aggregation and CSV output.
//!
//! Every trial index owns one dataset shared by all models; model
//! construction draws from a separate stream keyed by the model.

mod analysis;
mod experiment;
mod metrics;
mod report;
mod trial;

pub use analysis::{analyze_readout, NeuronRow, ReadoutAnalysis, SubsetScores};
pub use experiment::{
    aggregate, run_experiment, AggregateResult, ExperimentConfig, ExperimentOutput, GridPoint,
};
pub use metrics::{majority_vote, majority_vote_accuracy, rmse};
pub use report::{write_aggregate_csv, write_results_csv, AGGREGATE_HEADER, RESULTS_HEADER};
pub use trial::{
    dataset_seed, model_seed, run_trial, time_series_split, Model, ModelParams, TrialContext,
    TrialResult, TrialSpec,
};
