use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use super::{ConstraintScaling, TopologyConfig};
use crate::error::{Error, Result};
use crate::linalg::compensated_sum;

/// Node positions, one row `(x, y, z)` per node.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeCoordinates(pub DMatrix<f64>);

impl NodeCoordinates {
    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn row(&self, i: usize) -> [f64; 3] {
        [self.0[(i, 0)], self.0[(i, 1)], self.0[(i, 2)]]
    }
}

/// Draws i.i.d. standard normal coordinates, row by row.
pub fn sample_coordinates<R: Rng + ?Sized>(n: usize, rng: &mut R) -> NodeCoordinates {
    let mut m = DMatrix::zeros(n, 3);
    for i in 0..n {
        for c in 0..3 {
            m[(i, c)] = StandardNormal.sample(rng);
        }
    }
    NodeCoordinates(m)
}

/// Pairwise Euclidean distances between node positions.
pub fn distance_constraint(coords: &NodeCoordinates) -> DMatrix<f64> {
    let n = coords.n();
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        let a = coords.row(i);
        for j in (i + 1)..n {
            let b = coords.row(j);
            let dist =
                ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
            d[(i, j)] = dist;
            d[(j, i)] = dist;
        }
    }
    d
}

/// Index sums `i + j` with 0-based indices.
pub fn neurogenetic_constraint(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| (i + j) as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintMatrices {
    pub c_d: DMatrix<f64>,
    pub c_n: DMatrix<f64>,
    /// Regularizer drawn from the recurrent weight distribution. Its absolute
    /// value enters the pruning mass.
    pub r: DMatrix<f64>,
}

impl ConstraintMatrices {
    pub fn build<R: Rng + ?Sized>(
        coords: &NodeCoordinates,
        weight_sigma2: f64,
        rng: &mut R,
    ) -> Self {
        let n = coords.n();
        let normal = Normal::new(0.0, weight_sigma2.sqrt()).expect("sigma2 validated positive");
        let mut r = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                r[(i, j)] = normal.sample(rng);
            }
        }
        Self {
            c_d: distance_constraint(coords),
            c_n: neurogenetic_constraint(n),
            r,
        }
    }

    pub fn n(&self) -> usize {
        self.c_d.nrows()
    }
}

/// Normalized edge-deletion distribution. The diagonal is always zero and is
/// not part of the deletable set.
#[derive(Debug, Clone, PartialEq)]
pub struct PruneProbabilities(pub DMatrix<f64>);

impl PruneProbabilities {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    /// Compensated sum over the off-diagonal entries.
    pub fn total(&self) -> f64 {
        let n = self.0.nrows();
        compensated_sum(
            (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| self.0[(i, j)]),
        )
    }
}

/// Combines the constraints into a normalized deletion distribution:
/// `p_ij ∝ λ_dc·dc_ij^α + λ_nc·nc_ij^β + λ_reg·|r_ij|` over `i != j`.
///
/// The λ triple is divided by its sum before use, so only relative
/// magnitudes matter. With [`ConstraintScaling::Max`] each of the three terms
/// is first divided by its largest off-diagonal value, which keeps the
/// distance term from being swamped by the index-sum term (the latter grows
/// like `n^β`).
pub fn prune_probabilities(
    cm: &ConstraintMatrices,
    cfg: &TopologyConfig,
) -> Result<PruneProbabilities> {
    let lambda_sum = cfg.lambda_dc + cfg.lambda_nc + cfg.lambda_reg;
    if !(lambda_sum > 0.0) {
        return Err(Error::InvalidConfig(
            "lambda_dc + lambda_nc + lambda_reg must be positive".into(),
        ));
    }
    let n = cm.n();
    let dc = cm.c_d.map(|v| v.powf(cfg.alpha));
    let nc = cm.c_n.map(|v| v.powf(cfg.beta));
    let reg = cm.r.map(f64::abs);

    let term_scale = |m: &DMatrix<f64>| -> f64 {
        match cfg.constraint_scaling {
            ConstraintScaling::Raw => 1.0,
            ConstraintScaling::Max => {
                let mut max = 0.0f64;
                for j in 0..n {
                    for i in 0..n {
                        if i != j {
                            max = max.max(m[(i, j)]);
                        }
                    }
                }
                if max > 0.0 {
                    max
                } else {
                    1.0
                }
            }
        }
    };
    let l_dc = cfg.lambda_dc / lambda_sum / term_scale(&dc);
    let l_nc = cfg.lambda_nc / lambda_sum / term_scale(&nc);
    let l_reg = cfg.lambda_reg / lambda_sum / term_scale(&reg);

    let mut p = DMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            if i == j {
                continue;
            }
            let mut mass = 0.0;
            if l_dc > 0.0 {
                mass += l_dc * dc[(i, j)];
            }
            if l_nc > 0.0 {
                mass += l_nc * nc[(i, j)];
            }
            if l_reg > 0.0 {
                mass += l_reg * reg[(i, j)];
            }
            if !(mass >= 0.0 && mass.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "pruning mass at ({i}, {j}) is {mass}"
                )));
            }
            p[(i, j)] = mass;
        }
    }
    let total = compensated_sum(p.iter().copied());
    if total <= 0.0 {
        return Err(Error::AllMassZero);
    }
    p.iter_mut().for_each(|v| *v /= total);
    Ok(PruneProbabilities(p))
}
