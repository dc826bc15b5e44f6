//! Hub-structured recurrent networks for reservoir computing.
//!
//! The crate is organized around the pipeline used in the benchmarks:
//!
//! - [`topology`] builds dense random weight matrices and prunes them into hub
//!   or random networks.
//! - [`netmetrics`] measures degree heterogeneity, Louvain modularity,
//!   weighted clustering and unconnected nodes.
//! - [`reservoir`] turns a network into an echo state network, harvests states
//!   and fits closed-form readouts.
//! - [`tasks`] generates Mackey-Glass and NARMA10 series and reads MNIST IDX
//!   files.
//! - [`bench`] runs seeded ESN / HubESN / HubESN-rand trials and aggregates
//!   them into CSV tables.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod error;
pub mod linalg;
pub mod netmetrics;
pub mod reservoir;
pub mod seed;
pub mod tasks;
pub mod topology;

pub use error::{Error, Result};
pub use netmetrics::{CommunityAssignment, DegreeVector, NetworkMetrics};
pub use reservoir::{Esn, EsnConfig, Injection, Readout, StateMatrix};
pub use topology::{Network, NodeCoordinates, PruneMode, TopologyConfig};
