use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

use hubnet::bench::{Model, ModelParams};
use hubnet::tasks::Task;
use hubnet::topology::{ConstraintScaling, PruneMode, TopologyConfig};

/// Hub-structured reservoir networks: generation, metrics and benchmarks.
#[derive(Debug, Parser)]
#[command(name = "hubnet", version, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a pruned network and write it as JSON.
    Gen(GenArgs),
    /// Measure CV, modularity, clustering and unconnected nodes of a network.
    Metrics(MetricsArgs),
    /// Run ESN / HubESN / HubESN-rand trials and write result CSVs.
    Bench(BenchArgs),
    /// Train one model and export per-neuron readout weights.
    AnalyzeReadout(AnalyzeArgs),
    /// Write a Mackey-Glass or NARMA10 series as single-column CSV.
    Series(SeriesArgs),
    /// Draw mean score against n_train from an aggregate CSV as SVG.
    Plot(PlotArgs),
}

/// Pruning parameters shared by every command that builds networks.
#[derive(Debug, Clone, Args)]
pub struct TopologyArgs {
    /// Fraction of off-diagonal edges kept.
    #[arg(long, default_value_t = 0.2)]
    pub density: f64,
    /// Exponent on the distance constraint.
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    /// Exponent on the neurogenetic constraint.
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.5)]
    pub lambda_dc: f64,
    #[arg(long, default_value_t = 0.5)]
    pub lambda_nc: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda_reg: f64,
    /// Variance of the dense Normal weights.
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub weight_sigma2: f64,
    /// raw or max (each term divided by its largest value).
    #[arg(long, default_value = "max")]
    pub constraint_scaling: ConstraintScaling,
}

impl TopologyArgs {
    pub fn config(&self, n: usize, mode: PruneMode, seed: u64) -> TopologyConfig {
        TopologyConfig {
            n,
            density: self.density,
            alpha: self.alpha,
            beta: self.beta,
            lambda_dc: self.lambda_dc,
            lambda_nc: self.lambda_nc,
            lambda_reg: self.lambda_reg,
            mode,
            weight_sigma2: self.weight_sigma2,
            seed,
            constraint_scaling: self.constraint_scaling,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EsnArgs {
    /// Target spectral radius of the recurrent matrix.
    #[arg(long, default_value_t = 0.9)]
    pub spec_rad: f64,
    /// Fraction of neurons receiving input.
    #[arg(long, default_value_t = 0.1)]
    pub r_sig: f64,
    /// Leading training rows dropped before the readout fit.
    #[arg(long, default_value_t = 0)]
    pub washout: usize,
    /// Fit a readout intercept.
    #[arg(long)]
    pub bias: bool,
    #[command(flatten)]
    pub topology: TopologyArgs,
}

impl EsnArgs {
    pub fn params(&self) -> ModelParams {
        ModelParams {
            spec_rad: self.spec_rad,
            r_sig: self.r_sig,
            washout: self.washout,
            bias: self.bias,
            topology: self.topology.config(0, PruneMode::Hub, 0),
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of nodes.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "hub")]
    pub mode: PruneMode,
    #[command(flatten)]
    pub topology: TopologyArgs,
    #[arg(long, env = "HUBNET_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Network JSON written by `gen`.
    pub input: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write per-node degrees as CSV.
    #[arg(long)]
    pub degrees_out: Option<PathBuf>,
    /// Visit Louvain nodes in a seeded random order instead of ascending.
    #[arg(long)]
    pub louvain_seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Experiment JSON; replaces the grid flags below.
    #[arg(long, conflicts_with_all = ["task", "n_train"])]
    pub config: Option<PathBuf>,
    /// Tasks: mackey-glass, narma10, mnist (comma separated).
    #[arg(long, value_delimiter = ',', required_unless_present = "config")]
    pub task: Vec<Task>,
    #[arg(long, value_delimiter = ',', default_value = "esn,hubesn,hubesn-rand")]
    pub models: Vec<Model>,
    /// Reservoir sizes (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "1000")]
    pub n: Vec<usize>,
    /// Training lengths (comma separated).
    #[arg(long, value_delimiter = ',', required_unless_present = "config")]
    pub n_train: Vec<usize>,
    #[arg(long, default_value_t = 2000)]
    pub n_test: usize,
    /// Trials per grid point [default: 100, or 10 when every task is mnist].
    #[arg(long)]
    pub repeats: Option<usize>,
    #[arg(long, env = "HUBNET_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Per-trial results CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Aggregate CSV [default: <out stem>.aggregate.csv].
    #[arg(long)]
    pub aggregate_out: Option<PathBuf>,
    /// Save the resolved experiment as JSON.
    #[arg(long)]
    pub write_config: Option<PathBuf>,
    /// Compute the degree / readout-weight correlation per trial.
    #[arg(long)]
    pub degree_weight: bool,
    /// Record wall time per trial (makes output run dependent).
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub mnist_images: Option<PathBuf>,
    #[arg(long)]
    pub mnist_labels: Option<PathBuf>,
    #[command(flatten)]
    pub esn: EsnArgs,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// mackey-glass or narma10.
    #[arg(long, default_value = "mackey-glass")]
    pub task: Task,
    #[arg(long, default_value = "hubesn")]
    pub model: Model,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 4000)]
    pub n_train: usize,
    #[arg(long, default_value_t = 2000)]
    pub n_test: usize,
    /// Trial index within the seed.
    #[arg(long, default_value_t = 0)]
    pub trial: usize,
    #[arg(long, env = "HUBNET_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Per-neuron CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Training-span hidden states, one row per step.
    #[arg(long)]
    pub states_out: Option<PathBuf>,
    #[command(flatten)]
    pub esn: EsnArgs,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// mackey-glass or narma10.
    #[arg(long)]
    pub task: Task,
    #[arg(long, default_value_t = 5000)]
    pub length: usize,
    /// Write the raw Mackey-Glass values instead of the normalized copy.
    #[arg(long)]
    pub raw: bool,
    /// Mackey-Glass initial history value.
    #[arg(long, default_value_t = 1.2)]
    pub x0: f64,
    /// Mackey-Glass steps discarded before output.
    #[arg(long, default_value_t = 1000)]
    pub transient: usize,
    #[arg(long, env = "HUBNET_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// NARMA10 inputs u(t), written alongside the states.
    #[arg(long)]
    pub inputs_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Aggregate CSV written by `bench`.
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Plot only this task.
    #[arg(long)]
    pub task: Option<Task>,
    /// Plot only this reservoir size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Plot ratio of means to ESN instead of the mean score.
    #[arg(long)]
    pub ratio: bool,
}
