//! JSON form of a [`Network`]: `{config, coords, edges, n}` with edges as
//! `[row, col, weight]` triplets in row-major order.

use std::io::{Read, Write};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{Network, NodeCoordinates, TopologyConfig};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
pub(crate) struct NetworkDoc {
    pub config: TopologyConfig,
    pub coords: Vec<[f64; 3]>,
    pub edges: Vec<(usize, usize, f64)>,
    pub n: usize,
}

impl NetworkDoc {
    pub(crate) fn from_network(net: &Network) -> Self {
        let n = net.n();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let w = net.weights[(i, j)];
                if w != 0.0 {
                    edges.push((i, j, w));
                }
            }
        }
        Self {
            config: net.config.clone(),
            coords: (0..n).map(|i| net.coords.row(i)).collect(),
            edges,
            n,
        }
    }

    pub(crate) fn into_network(self) -> Result<Network> {
        let n = self.n;
        if self.coords.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinate rows for n = {n}",
                self.coords.len()
            )));
        }
        let mut weights = DMatrix::zeros(n, n);
        for (i, j, w) in self.edges {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j),
                    len: n,
                });
            }
            weights[(i, j)] = w;
        }
        let mut coords = DMatrix::zeros(n, 3);
        for (i, row) in self.coords.iter().enumerate() {
            for c in 0..3 {
                coords[(i, c)] = row[c];
            }
        }
        Ok(Network {
            weights,
            coords: NodeCoordinates(coords),
            config: self.config,
        })
    }
}

impl Network {
    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&NetworkDoc::from_network(
            self,
        ))?)
    }

    pub fn write_json<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer_pretty(writer, &NetworkDoc::from_network(self))?;
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str::<NetworkDoc>(s)?.into_network()
    }

    pub fn read_json<R: Read>(reader: R) -> Result<Self> {
        serde_json::from_reader::<_, NetworkDoc>(reader)?.into_network()
    }
}
