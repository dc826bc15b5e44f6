use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;

use super::trial::{run_trial, Model, ModelParams, TrialContext, TrialResult, TrialSpec};
use crate::error::{Error, Result};
use crate::linalg::mean_sd;
use crate::tasks::{MnistData, Task};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub task: Task,
    pub model: Model,
    pub n: usize,
    pub n_train: usize,
}

/// A benchmark run; serializes to the JSON experiment file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub grid: Vec<GridPoint>,
    pub n_test: usize,
    pub repeats: usize,
    pub base_seed: u64,
    /// Worker threads; 0 uses every core.
    #[serde(default)]
    pub jobs: usize,
    #[serde(default)]
    pub params: ModelParams,
    /// Also compute the degree / readout-weight correlation per trial.
    #[serde(default)]
    pub degree_weight: bool,
    #[serde(default)]
    pub mnist_images: Option<PathBuf>,
    #[serde(default)]
    pub mnist_labels: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Grid over the Cartesian product, task-major then `n`, `n_train`, model.
    pub fn product(
        tasks: &[Task],
        models: &[Model],
        ns: &[usize],
        n_trains: &[usize],
    ) -> Vec<GridPoint> {
        let mut grid = Vec::new();
        for &task in tasks {
            for &n in ns {
                for &n_train in n_trains {
                    for &model in models {
                        grid.push(GridPoint {
                            task,
                            model,
                            n,
                            n_train,
                        });
                    }
                }
            }
        }
        grid
    }

    pub fn validate(&self) -> Result<()> {
        if self.repeats == 0 {
            return Err(Error::InvalidConfig("repeats must be at least 1".into()));
        }
        if self.grid.is_empty() {
            return Err(Error::InvalidConfig("empty experiment grid".into()));
        }
        if self.n_test == 0 {
            return Err(Error::InvalidConfig("n_test must be positive".into()));
        }
        if let Some(g) = self.grid.iter().find(|g| g.n == 0 || g.n_train == 0) {
            return Err(Error::InvalidConfig(format!(
                "grid point {g:?} has a zero size"
            )));
        }
        Ok(())
    }

    pub fn needs_mnist(&self) -> bool {
        self.grid.iter().any(|g| g.task == Task::Mnist)
    }

    fn specs(&self) -> Vec<TrialSpec> {
        self.grid
            .iter()
            .flat_map(|g| {
                (0..self.repeats).map(move |trial| TrialSpec {
                    task: g.task,
                    model: g.model,
                    n: g.n,
                    n_train: g.n_train,
                    n_test: self.n_test,
                    trial,
                    base_seed: self.base_seed,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateResult {
    pub task: Task,
    pub model: Model,
    pub n: usize,
    pub n_train: usize,
    pub mean: f64,
    /// Population standard deviation.
    pub sd: f64,
    pub count: usize,
    /// Mean over trials of `score / esn_score`; absent without an ESN row.
    pub ratio_to_esn_mean_of_ratios: Option<f64>,
    pub ratio_to_esn_ratio_of_means: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    /// Completed trials in (grid, trial) order.
    pub trials: Vec<TrialResult>,
    pub aggregates: Vec<AggregateResult>,
    /// Grid points dropped because a trial failed, with the first error.
    pub failures: Vec<(GridPoint, String)>,
}

fn point_of(spec: &TrialSpec) -> GridPoint {
    GridPoint {
        task: spec.task,
        model: spec.model,
        n: spec.n,
        n_train: spec.n_train,
    }
}

/// Aggregates trials grouped by grid point, in order of first appearance.
pub fn aggregate(trials: &[TrialResult]) -> Vec<AggregateResult> {
    let mut order = Vec::new();
    let mut groups: BTreeMap<GridPoint, Vec<&TrialResult>> = BTreeMap::new();
    for t in trials {
        let g = point_of(&t.spec);
        groups
            .entry(g)
            .or_insert_with(|| {
                order.push(g);
                Vec::new()
            })
            .push(t);
    }
    for v in groups.values_mut() {
        v.sort_by_key(|t| t.spec.trial);
    }
    order
        .iter()
        .map(|g| {
            let rows = &groups[g];
            let scores: Vec<f64> = rows.iter().map(|t| t.score).collect();
            let (mean, sd) = mean_sd(&scores);
            let esn_key = GridPoint {
                model: Model::Esn,
                ..*g
            };
            let (mut mor, mut rom) = (None, None);
            if g.model == Model::Esn {
                mor = Some(1.0);
                rom = Some(1.0);
            } else if let Some(base) = groups.get(&esn_key) {
                let by_trial: BTreeMap<usize, f64> =
                    base.iter().map(|t| (t.spec.trial, t.score)).collect();
                let ratios: Vec<f64> = rows
                    .iter()
                    .filter_map(|t| by_trial.get(&t.spec.trial).map(|b| t.score / b))
                    .collect();
                if !ratios.is_empty() {
                    mor = Some(mean_sd(&ratios).0);
                }
                let base_scores: Vec<f64> = base.iter().map(|t| t.score).collect();
                rom = Some(mean / mean_sd(&base_scores).0);
            }
            AggregateResult {
                task: g.task,
                model: g.model,
                n: g.n,
                n_train: g.n_train,
                mean,
                sd,
                count: scores.len(),
                ratio_to_esn_mean_of_ratios: mor,
                ratio_to_esn_ratio_of_means: rom,
            }
        })
        .collect()
}

/// Runs `repeats` trials per grid point on up to `cfg.jobs` threads. Output
/// order and values do not depend on the thread count.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    mnist: Option<&MnistData>,
) -> Result<ExperimentOutput> {
    cfg.validate()?;
    if cfg.needs_mnist() && mnist.is_none() {
        return Err(Error::InvalidConfig(
            "grid contains mnist but no data was loaded".into(),
        ));
    }
    let ctx = TrialContext {
        params: &cfg.params,
        mnist,
        degree_weight: cfg.degree_weight,
    };
    let specs = cfg.specs();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let results: Vec<Result<TrialResult>> =
        pool.install(|| specs.par_iter().map(|s| run_trial(s, &ctx)).collect());

    let mut failed: BTreeMap<GridPoint, String> = BTreeMap::new();
    for (spec, r) in specs.iter().zip(&results) {
        if let Err(e) = r {
            failed
                .entry(point_of(spec))
                .or_insert_with(|| format!("trial {}: {e}", spec.trial));
        }
    }
    let trials: Vec<TrialResult> = results
        .into_iter()
        .filter_map(|r| r.ok())
        .filter(|t| !failed.contains_key(&point_of(&t.spec)))
        .collect();
    let failures = cfg
        .grid
        .iter()
        .filter_map(|g| failed.get(g).map(|m| (*g, m.clone())))
        .collect();
    Ok(ExperimentOutput {
        aggregates: aggregate(&trials),
        trials,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(repeats: usize, models: &[Model], jobs: usize) -> ExperimentConfig {
        ExperimentConfig {
            grid: ExperimentConfig::product(&[Task::Narma10], models, &[40], &[120]),
            n_test: 60,
            repeats,
            base_seed: 5,
            jobs,
            params: ModelParams::default(),
            degree_weight: true,
            mnist_images: None,
            mnist_labels: None,
        }
    }

    #[test]
    fn single_repeat_has_zero_sd() {
        let out = run_experiment(&small(1, &[Model::HubEsn], 1), None).unwrap();
        assert_eq!(out.trials.len(), 1);
        let a = &out.aggregates[0];
        assert_eq!((a.mean, a.sd, a.count), (out.trials[0].score, 0.0, 1));
        assert_eq!(a.ratio_to_esn_mean_of_ratios, None);
    }

    #[test]
    fn esn_ratio_is_one_and_order_is_stable() {
        let out1 = run_experiment(&small(3, &Model::ALL, 1), None).unwrap();
        let out4 = run_experiment(&small(3, &Model::ALL, 4), None).unwrap();
        assert_eq!(out4.with_times_of(&out1), out1);
        let esn = &out1.aggregates[0];
        assert_eq!(esn.model, Model::Esn);
        assert_eq!(esn.ratio_to_esn_mean_of_ratios, Some(1.0));
        assert_eq!(esn.ratio_to_esn_ratio_of_means, Some(1.0));
        let hub = &out1.aggregates[1];
        assert!((hub.ratio_to_esn_ratio_of_means.unwrap() - hub.mean / esn.mean).abs() < 1e-15);
        let trials: Vec<usize> = out1.trials.iter().map(|t| t.spec.trial).collect();
        assert_eq!(trials, vec![0, 1, 2, 0, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn failing_point_is_reported_not_aggregated() {
        let mut cfg = small(2, &[Model::Esn], 1);
        cfg.grid.push(GridPoint {
            task: Task::MackeyGlass,
            model: Model::Esn,
            n: 40,
            n_train: 120,
        });
        cfg.params.spec_rad = -1.0;
        let out = run_experiment(&cfg, None).unwrap();
        assert_eq!(out.failures.len(), 2);
        assert!(out.trials.is_empty());
    }

    #[test]
    fn config_round_trips_json() {
        let cfg = small(2, &Model::ALL, 3);
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        assert!(text.contains("\"hubesn_rand\"") && text.contains("\"narma10\""));
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn invalid_configs() {
        assert!(run_experiment(&small(0, &[Model::Esn], 1), None).is_err());
        let mut cfg = small(1, &[Model::Esn], 1);
        cfg.grid[0].task = Task::Mnist;
        assert!(run_experiment(&cfg, None).is_err());
    }

    impl ExperimentOutput {
        fn with_times_of(mut self, other: &ExperimentOutput) -> Self {
            for (t, o) in self.trials.iter_mut().zip(&other.trials) {
                t.wall_time_s = o.wall_time_s;
            }
            self
        }
    }
}
