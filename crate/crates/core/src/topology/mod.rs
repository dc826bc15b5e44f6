//! Hub and random network generation.
//!
//! A network starts as a dense Gaussian weight matrix with an empty diagonal.
//! Hub networks are pruned by a weighted sample without replacement whose
//! weights mix a distance constraint, a neurogenetic (index-sum) constraint
//! and a random regularizer. Random networks are pruned uniformly.

mod constraints;
mod io;
mod prune;

pub use constraints::{
    distance_constraint, neurogenetic_constraint, prune_probabilities, sample_coordinates,
    ConstraintMatrices, NodeCoordinates, PruneProbabilities,
};
pub use prune::{off_diagonal_index, prune, prune_uniform, retained_edge_count};

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PruneMode {
    Hub,
    Random,
}

impl std::str::FromStr for PruneMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hub" => Ok(PruneMode::Hub),
            "random" => Ok(PruneMode::Random),
            other => Err(Error::InvalidConfig(format!("unknown mode `{other}`"))),
        }
    }
}

/// How the three pruning terms are brought to a common scale before the λ
/// weights are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintScaling {
    /// Use `dc^α`, `nc^β` and `|r|` as they are.
    Raw,
    /// Divide each term by its largest off-diagonal value.
    #[default]
    Max,
}

impl std::str::FromStr for ConstraintScaling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(ConstraintScaling::Raw),
            "max" => Ok(ConstraintScaling::Max),
            other => Err(Error::InvalidConfig(format!(
                "unknown constraint scaling `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyConfig {
    pub n: usize,
    /// Fraction of off-diagonal edges retained.
    pub density: f64,
    pub alpha: f64,
    pub beta: f64,
    pub lambda_dc: f64,
    pub lambda_nc: f64,
    pub lambda_reg: f64,
    pub mode: PruneMode,
    /// Variance of the Gaussian recurrent weights.
    pub weight_sigma2: f64,
    pub seed: u64,
    #[serde(default)]
    pub constraint_scaling: ConstraintScaling,
}

impl Default for TopologyConfig {
    fn default() -> Self {
        Self {
            n: 500,
            density: 0.2,
            alpha: 2.0,
            beta: 2.0,
            lambda_dc: 0.5,
            lambda_nc: 0.5,
            lambda_reg: 0.0,
            mode: PruneMode::Hub,
            weight_sigma2: 1.0 / 3.0,
            seed: 0,
            constraint_scaling: ConstraintScaling::Max,
        }
    }
}

impl TopologyConfig {
    pub fn with_n(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.density > 0.0 && self.density <= 1.0) {
            return bad(format!("density {} outside (0, 1]", self.density));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite())
            || !(self.beta >= 0.0 && self.beta.is_finite())
        {
            return bad("alpha and beta must be finite and nonnegative".into());
        }
        for (name, v) in [
            ("lambda_dc", self.lambda_dc),
            ("lambda_nc", self.lambda_nc),
            ("lambda_reg", self.lambda_reg),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return bad(format!("{name} = {v} must be finite and nonnegative"));
            }
        }
        if self.mode == PruneMode::Hub && self.lambda_dc + self.lambda_nc + self.lambda_reg <= 0.0 {
            return bad("hub mode needs lambda_dc + lambda_nc + lambda_reg > 0".into());
        }
        if !(self.weight_sigma2 > 0.0 && self.weight_sigma2.is_finite()) {
            return bad(format!(
                "weight_sigma2 {} must be positive",
                self.weight_sigma2
            ));
        }
        Ok(())
    }
}

/// A weighted directed graph. `weights[(i, j)]` is the connection from node
/// `j` into node `i`; zero means absent.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    pub weights: DMatrix<f64>,
    pub coords: NodeCoordinates,
    pub config: TopologyConfig,
}

impl Network {
    /// Generates a network from `config.seed`.
    pub fn generate(config: &TopologyConfig) -> Result<Self> {
        generate_network(config, &mut seed::rng_from_seed(config.seed))
    }

    pub fn n(&self) -> usize {
        self.weights.nrows()
    }

    /// Number of nonzero off-diagonal weights.
    pub fn edge_count(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for j in 0..n {
            for i in 0..n {
                if i != j && self.weights[(i, j)] != 0.0 {
                    count += 1;
                }
            }
        }
        count
    }

    /// Builds a network from an explicit weight matrix, e.g. for toy graphs.
    /// Coordinates are zero and the config records `n` only.
    pub fn from_weights(weights: DMatrix<f64>) -> Result<Self> {
        if weights.nrows() != weights.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "weight matrix is {}x{}",
                weights.nrows(),
                weights.ncols()
            )));
        }
        let n = weights.nrows();
        Ok(Self {
            coords: NodeCoordinates(DMatrix::zeros(n, 3)),
            config: TopologyConfig::with_n(n),
            weights,
        })
    }

    /// Undirected edge list helper for toy graphs: each `(a, b, w)` sets both
    /// `a -> b` and `b -> a`.
    pub fn from_undirected_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut w = DMatrix::zeros(n, n);
        for &(a, b, weight) in edges {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    len: n,
                });
            }
            w[(a, b)] = weight;
            w[(b, a)] = weight;
        }
        Self::from_weights(w)
    }
}

/// Dense Gaussian weights with a zero diagonal.
pub fn dense_weights<R: Rng + ?Sized>(n: usize, sigma2: f64, rng: &mut R) -> DMatrix<f64> {
    let normal = Normal::new(0.0, sigma2.sqrt()).expect("sigma2 validated positive");
    let mut w = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = normal.sample(rng);
            if i != j {
                w[(i, j)] = v;
            }
        }
    }
    w
}

/// Generates a hub or random network.
///
/// Draw order from `rng`: coordinates, dense weights, regularizer matrix (hub
/// mode only), then the pruning sample. The coordinates and dense weights are
/// therefore shared by a hub and a random network generated from the same seed.
pub fn generate_network<R: Rng + ?Sized>(cfg: &TopologyConfig, rng: &mut R) -> Result<Network> {
    cfg.validate()?;
    let n = cfg.n;
    let coords = sample_coordinates(n, rng);
    let dense = dense_weights(n, cfg.weight_sigma2, rng);
    let keep = retained_edge_count(n, cfg.density);
    let total = n * n.saturating_sub(1);

    let weights = if keep == total {
        dense
    } else {
        match cfg.mode {
            PruneMode::Hub => {
                let cm = ConstraintMatrices::build(&coords, cfg.weight_sigma2, rng);
                let p = prune_probabilities(&cm, cfg)?;
                prune(&dense, &p, cfg.density, rng)
            }
            PruneMode::Random => prune_uniform(&dense, cfg.density, rng),
        }
    };

    Ok(Network {
        weights,
        coords,
        config: cfg.clone(),
    })
}
