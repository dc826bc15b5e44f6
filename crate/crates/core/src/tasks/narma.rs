use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Dataset, DatasetKind};
use crate::error::{Error, Result};

pub const DIVERGENCE_BOUND: f64 = 1e3;
pub const MAX_REGENERATIONS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NarmaConfig {
    pub l: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub length: usize,
    pub seed: u64,
}

impl Default for NarmaConfig {
    fn default() -> Self {
        Self {
            l: 10,
            alpha: 0.3,
            beta: 0.05,
            gamma: 1.5,
            delta: 0.1,
            length: 5000,
            seed: 0,
        }
    }
}

/// `u` has `length` entries and `x` has `length + 1`, so `u[t]` pairs with
/// the target `x[t + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NarmaSeries {
    pub u: Vec<f64>,
    pub x: Vec<f64>,
    /// Divergent draws discarded before this one.
    pub regenerations: usize,
}

impl NarmaSeries {
    pub fn to_dataset(&self) -> Dataset {
        let mut ds = Dataset::from_columns(&self.u, &self.x[1..], DatasetKind::OneStep);
        ds.meta.insert("task".into(), "narma10".into());
        ds.meta
            .insert("regenerations".into(), self.regenerations.to_string());
        ds
    }
}

/// Runs the recurrence on a given input sequence:
/// `x(t) = α·x(t−1) + β·x(t−1)·Σ_{i=1..l} x(t−i) + γ·u(t−l)·u(t−1) + δ`
/// for `t ≥ l`, with `x(t) = 0` for `t < l`. Returns `u.len() + 1` values.
pub fn narma10_recursion(cfg: &NarmaConfig, u: &[f64]) -> Vec<f64> {
    let l = cfg.l.max(1);
    let len = u.len() + 1;
    let mut x = vec![0.0; len];
    for t in l..len {
        let prev = x[t - 1];
        let window: f64 = x[t - l..t].iter().sum();
        x[t] = cfg.alpha * prev
            + cfg.beta * prev * window
            + cfg.gamma * u[t - l] * u[t - 1]
            + cfg.delta;
    }
    x
}

/// Draws `u(t) ~ U[0, 0.5]` and runs the recurrence, redrawing the whole
/// series whenever `|x|` exceeds the divergence bound.
pub fn narma10<R: Rng + ?Sized>(cfg: &NarmaConfig, rng: &mut R) -> Result<NarmaSeries> {
    for attempt in 0..MAX_REGENERATIONS {
        let u: Vec<f64> = (0..cfg.length)
            .map(|_| rng.random_range(0.0..=0.5))
            .collect();
        let x = narma10_recursion(cfg, &u);
        if x.iter()
            .all(|v| v.is_finite() && v.abs() <= DIVERGENCE_BOUND)
        {
            return Ok(NarmaSeries {
                u,
                x,
                regenerations: attempt,
            });
        }
    }
    Err(Error::RegenerationExhausted(MAX_REGENERATIONS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    #[test]
    fn zero_input_reaches_fixed_point() {
        let x = narma10_recursion(&NarmaConfig::default(), &[0.0; 200]);
        let fixed = 0.7 - 0.29f64.sqrt();
        assert!((fixed - 0.161483).abs() < 1e-6);
        assert!((x[200] - fixed).abs() < 1e-6, "{}", x[200]);
    }

    #[test]
    fn warmup_is_zero_then_recursion_by_hand() {
        let cfg = NarmaConfig::default();
        let u: Vec<f64> = (0..12).map(|i| 0.01 * i as f64).collect();
        let x = narma10_recursion(&cfg, &u);
        assert!(x[..10].iter().all(|&v| v == 0.0));
        let x10 = 1.5 * u[0] * u[9] + 0.1;
        assert!((x[10] - x10).abs() < 1e-15);
        let x11 = 0.3 * x10 + 0.05 * x10 * x10 + 1.5 * u[1] * u[10] + 0.1;
        assert!((x[11] - x11).abs() < 1e-15);
    }

    #[test]
    fn inputs_in_range_and_deterministic() {
        let cfg = NarmaConfig {
            length: 2000,
            ..Default::default()
        };
        let a = narma10(&cfg, &mut rng_from_seed(5)).unwrap();
        assert!(a.u.iter().all(|&v| (0.0..=0.5).contains(&v)));
        assert!(a.x.iter().all(|v| v.abs() <= DIVERGENCE_BOUND));
        assert_eq!(a.x.len(), 2001);
        assert_eq!(a, narma10(&cfg, &mut rng_from_seed(5)).unwrap());
    }

    #[test]
    fn divergent_parameters_exhaust_regeneration() {
        let cfg = NarmaConfig {
            alpha: 3.0,
            length: 200,
            ..Default::default()
        };
        assert!(matches!(
            narma10(&cfg, &mut rng_from_seed(1)),
            Err(Error::RegenerationExhausted(100))
        ));
    }

    #[test]
    fn dataset_pairs_input_with_next_state() {
        let s = narma10(
            &NarmaConfig {
                length: 50,
                ..Default::default()
            },
            &mut rng_from_seed(2),
        )
        .unwrap();
        let ds = s.to_dataset();
        assert_eq!(ds.len(), 50);
        assert_eq!(ds.inputs[(7, 0)], s.u[7]);
        assert_eq!(ds.targets[(7, 0)], s.x[8]);
    }
}
