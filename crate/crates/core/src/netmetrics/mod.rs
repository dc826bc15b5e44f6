//! Graph measurements of a [`Network`]: degrees, heterogeneity, Louvain
//! modularity, weighted clustering and unconnected nodes.

mod clustering;
mod degree;
mod louvain;
mod modularity;

pub use clustering::clustering_coefficient;
pub use degree::{
    degree_summary, heterogeneity_cv, node_degrees, unconnected_count, DegreeSummary, DegreeVector,
    Histogram,
};
pub use louvain::{louvain_partition, CommunityAssignment, VisitOrder};
pub use modularity::{modularity, symmetric_abs_weights};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::topology::Network;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkMetrics {
    pub cv: f64,
    pub modularity: f64,
    pub clustering: f64,
    pub unconnected: usize,
    pub degree_summary: DegreeSummary,
}

/// Runs the full metric suite. CV and modularity are reported as NaN when
/// undefined (no edges).
pub fn measure(net: &Network, order: VisitOrder) -> Result<NetworkMetrics> {
    let deg = node_degrees(net);
    let cv = heterogeneity_cv(&deg).unwrap_or(f64::NAN);
    let labels = louvain_partition(net, order);
    let q = modularity(net, &labels).unwrap_or(f64::NAN);
    Ok(NetworkMetrics {
        cv,
        modularity: q,
        clustering: clustering_coefficient(net),
        unconnected: unconnected_count(net),
        degree_summary: degree_summary(&deg),
    })
}
