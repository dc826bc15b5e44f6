use nalgebra::DMatrix;

use crate::topology::Network;

/// Mean weighted clustering coefficient (geometric-mean form) over all nodes.
///
/// Non-positive weights are dropped, the graph is symmetrized with
/// `max(w_ij, w_ji)`, and weights are divided by the global maximum. Nodes
/// with fewer than two neighbours contribute 0.
pub fn clustering_coefficient(net: &Network) -> f64 {
    let n = net.n();
    if n == 0 {
        return 0.0;
    }
    let w = &net.weights;
    let mut a = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else {
            w[(i, j)].max(w[(j, i)]).max(0.0)
        }
    });
    let max = a.max();
    if !(max > 0.0) {
        return 0.0;
    }
    a.iter_mut().for_each(|v| *v = (*v / max).cbrt());

    let mut total = 0.0;
    for i in 0..n {
        let nbrs: Vec<usize> = (0..n).filter(|&j| a[(i, j)] > 0.0).collect();
        let k = nbrs.len();
        if k < 2 {
            continue;
        }
        let mut s = 0.0;
        for (x, &j) in nbrs.iter().enumerate() {
            for &h in &nbrs[x + 1..] {
                let jh = a[(j, h)];
                if jh > 0.0 {
                    s += a[(i, j)] * a[(i, h)] * jh;
                }
            }
        }
        total += 2.0 * s / (k * (k - 1)) as f64;
    }
    total / n as f64
}
