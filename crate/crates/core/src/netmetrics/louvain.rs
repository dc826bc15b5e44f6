//! Two-phase Louvain modularity optimization.
//!
//! Nodes are visited in ascending index order (or a seeded shuffle). A node
//! moves only on a strict modularity gain; among equally good target
//! communities the lowest id wins.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::symmetric_abs_weights;
use crate::seed;
use crate::topology::Network;

/// Community id per node; ids are contiguous from 0, numbered by first
/// appearance in node order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommunityAssignment(pub Vec<usize>);

impl CommunityAssignment {
    pub fn community_count(&self) -> usize {
        self.0.iter().max().map_or(0, |&m| m + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VisitOrder {
    #[default]
    Ascending,
    Shuffled(u64),
}

struct Graph {
    adj: Vec<Vec<(usize, f64)>>,
    self_loop: Vec<f64>,
}

impl Graph {
    fn n(&self) -> usize {
        self.adj.len()
    }

    fn strength(&self, i: usize) -> f64 {
        self.self_loop[i] + self.adj[i].iter().map(|&(_, w)| w).sum::<f64>()
    }
}

fn relabel(raw: &[usize]) -> (Vec<usize>, usize) {
    let mut map = vec![usize::MAX; raw.len().max(raw.iter().max().map_or(0, |&m| m + 1))];
    let mut next = 0;
    let out = raw
        .iter()
        .map(|&c| {
            if map[c] == usize::MAX {
                map[c] = next;
                next += 1;
            }
            map[c]
        })
        .collect();
    (out, next)
}

/// One local-moving phase. Returns the community of each node and whether
/// any node moved.
fn local_moves(g: &Graph, order: &[usize]) -> (Vec<usize>, bool) {
    let n = g.n();
    let k: Vec<f64> = (0..n).map(|i| g.strength(i)).collect();
    let two_m: f64 = k.iter().sum();
    let mut community: Vec<usize> = (0..n).collect();
    if two_m <= 0.0 {
        return (community, false);
    }
    let eps = 1e-12 * two_m / n as f64;
    let mut tot = k.clone();
    let mut links = vec![0.0f64; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut any_move = false;

    loop {
        let mut moved = false;
        for &i in order {
            let ci = community[i];
            for &(j, w) in &g.adj[i] {
                let c = community[j];
                if links[c] == 0.0 && !touched.contains(&c) {
                    touched.push(c);
                }
                links[c] += w;
            }
            tot[ci] -= k[i];
            let gain = |c: usize, links: &[f64]| links[c] - k[i] * tot[c] / two_m;

            let mut best = ci;
            let mut best_gain = gain(ci, &links);
            touched.sort_unstable();
            for &c in &touched {
                let g_c = gain(c, &links);
                if g_c > best_gain + eps {
                    best = c;
                    best_gain = g_c;
                }
            }
            tot[best] += k[i];
            community[i] = best;
            if best != ci {
                moved = true;
            }
            for &c in &touched {
                links[c] = 0.0;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
        any_move = true;
    }
    (community, any_move)
}

fn aggregate(g: &Graph, community: &[usize], count: usize) -> Graph {
    let mut self_loop = vec![0.0; count];
    let mut dense: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); count];
    for i in 0..g.n() {
        let ci = community[i];
        self_loop[ci] += g.self_loop[i];
        for &(j, w) in &g.adj[i] {
            let cj = community[j];
            if ci == cj {
                self_loop[ci] += w;
            } else {
                *dense[ci].entry(cj).or_insert(0.0) += w;
            }
        }
    }
    Graph {
        adj: dense.into_iter().map(|m| m.into_iter().collect()).collect(),
        self_loop,
    }
}

/// Louvain partition of the symmetrized absolute-weight graph.
pub fn louvain_partition(net: &Network, order: VisitOrder) -> CommunityAssignment {
    let n = net.n();
    let a = symmetric_abs_weights(net);
    let mut g = Graph {
        adj: (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| a[(i, j)] != 0.0)
                    .map(|j| (j, a[(i, j)]))
                    .collect()
            })
            .collect(),
        self_loop: vec![0.0; n],
    };
    let mut rng = match order {
        VisitOrder::Shuffled(s) => Some(seed::rng_from_seed(s)),
        VisitOrder::Ascending => None,
    };
    let mut node_to_comm: Vec<usize> = (0..n).collect();

    loop {
        let mut visit: Vec<usize> = (0..g.n()).collect();
        if let Some(rng) = rng.as_mut() {
            visit.shuffle(rng);
        }
        let (raw, moved) = local_moves(&g, &visit);
        if !moved {
            break;
        }
        let (comm, count) = relabel(&raw);
        for c in node_to_comm.iter_mut() {
            *c = comm[*c];
        }
        if count == g.n() {
            break;
        }
        g = aggregate(&g, &comm, count);
    }
    CommunityAssignment(relabel(&node_to_comm).0)
}
