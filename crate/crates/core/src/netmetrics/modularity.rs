use nalgebra::DMatrix;

use super::CommunityAssignment;
use crate::error::{Error, Result};
use crate::topology::Network;

/// `A_ij = max(|w_ij|, |w_ji|)` with an empty diagonal.
pub fn symmetric_abs_weights(net: &Network) -> DMatrix<f64> {
    let n = net.n();
    let w = &net.weights;
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else {
            w[(i, j)].abs().max(w[(j, i)].abs())
        }
    })
}

/// Newman modularity of `labels` on the symmetrized absolute-weight graph,
/// evaluated as a plain double loop over node pairs.
pub fn modularity(net: &Network, labels: &CommunityAssignment) -> Result<f64> {
    let n = net.n();
    if labels.0.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} labels for {n} nodes",
            labels.0.len()
        )));
    }
    let a = symmetric_abs_weights(net);
    let two_m: f64 = a.iter().sum();
    if !(two_m > 0.0) {
        return Err(Error::ZeroTotalWeight);
    }
    let k: Vec<f64> = (0..n).map(|i| a.row(i).sum()).collect();
    // The observed and null-model terms are accumulated separately so that
    // integer-weight toy graphs evaluate exactly.
    let mut observed = 0.0;
    let mut expected = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels.0[i] == labels.0[j] {
                observed += a[(i, j)];
                expected += k[i] * k[j];
            }
        }
    }
    Ok((observed - expected / two_m) / two_m)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_triangles() -> Network {
        Network::from_undirected_edges(
            6,
            &[
                (0, 1, 1.0),
                (1, 2, 1.0),
                (0, 2, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (3, 5, 1.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_triangles_component_split_is_one_half() {
        let q = modularity(
            &two_triangles(),
            &CommunityAssignment(vec![0, 0, 0, 1, 1, 1]),
        )
        .unwrap();
        assert_eq!(q, 0.5);
    }

    #[test]
    fn single_cross_edge_is_minus_one_half() {
        let net = Network::from_undirected_edges(2, &[(0, 1, 1.0)]).unwrap();
        let q = modularity(&net, &CommunityAssignment(vec![0, 1])).unwrap();
        assert_eq!(q, -0.5);
    }

    #[test]
    fn one_community_is_zero() {
        let net = crate::topology::Network::generate(&crate::topology::TopologyConfig {
            n: 40,
            seed: 1,
            ..Default::default()
        })
        .unwrap();
        let q = modularity(&net, &CommunityAssignment(vec![0; 40])).unwrap();
        assert!(q.abs() < 1e-12, "{q}");
    }

    #[test]
    fn signed_weights_use_magnitudes() {
        let mut w = DMatrix::zeros(2, 2);
        w[(0, 1)] = -2.0;
        w[(1, 0)] = 0.5;
        let a = symmetric_abs_weights(&Network::from_weights(w).unwrap());
        assert_eq!(a[(0, 1)], 2.0);
        assert_eq!(a[(1, 0)], 2.0);
    }

    #[test]
    fn errors() {
        let empty = Network::from_weights(DMatrix::zeros(3, 3)).unwrap();
        assert!(matches!(
            modularity(&empty, &CommunityAssignment(vec![0, 1, 2])),
            Err(Error::ZeroTotalWeight)
        ));
        assert!(matches!(
            modularity(&two_triangles(), &CommunityAssignment(vec![0])),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
