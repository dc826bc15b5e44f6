use serde::{Deserialize, Serialize};

/// Margin kept between the normalized series and ±1.
pub const NORM_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MackeyGlassConfig {
    pub tau: usize,
    pub beta: f64,
    pub gamma: f64,
    pub k: f64,
    pub dt: f64,
    pub length: usize,
    pub transient: usize,
    pub x0: f64,
    /// Reserved; the recursion is deterministic.
    pub seed: u64,
}

impl Default for MackeyGlassConfig {
    fn default() -> Self {
        Self {
            tau: 17,
            beta: 0.2,
            gamma: 0.1,
            k: 10.0,
            dt: 1.0,
            length: 5000,
            transient: 1000,
            x0: 1.2,
            seed: 0,
        }
    }
}

impl MackeyGlassConfig {
    pub fn with_length(length: usize) -> Self {
        Self {
            length,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MackeyGlassSeries {
    pub raw: Vec<f64>,
    pub normalized: Vec<f64>,
}

/// Euler recursion `x(t+1) = x(t) + dt·(β·x(t−τ)/(1 + x(t−τ)^k) − γ·x(t))`
/// with constant history `x(s) = x0` for `s ≤ 0`. Emits `x(transient)`
/// through `x(transient + length − 1)`.
pub fn mackey_glass(cfg: &MackeyGlassConfig) -> MackeyGlassSeries {
    let total = cfg.transient + cfg.length;
    // x[j] holds x(j − tau)
    let mut x = Vec::with_capacity(total + cfg.tau);
    x.resize(cfg.tau + 1, cfg.x0);
    while x.len() < total + cfg.tau {
        let t = x.len() - 1;
        let cur = x[t];
        let lag = x[t - cfg.tau];
        x.push(cur + cfg.dt * (cfg.beta * lag / (1.0 + lag.powf(cfg.k)) - cfg.gamma * cur));
    }
    let raw = x[cfg.tau + cfg.transient..].to_vec();
    let normalized = normalize_open_interval(&raw);
    MackeyGlassSeries { raw, normalized }
}

/// Min-max map onto `[−1 + ε, 1 − ε]`. A constant series maps to zeros.
pub fn normalize_open_interval(x: &[f64]) -> Vec<f64> {
    let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    if !(span > 0.0) {
        return vec![0.0; x.len()];
    }
    let half = 1.0 - NORM_EPS;
    x.iter()
        .map(|&v| (-half + 2.0 * half * (v - lo) / span).clamp(-half, half))
        .collect()
}
