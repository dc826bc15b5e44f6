use nalgebra::DMatrix;
use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, Exp1};

use super::PruneProbabilities;

/// `round(density · n · (n − 1))`.
pub fn retained_edge_count(n: usize, density: f64) -> usize {
    let total = n * n.saturating_sub(1);
    ((density * total as f64).round() as usize).min(total)
}

/// Maps a row-major index over off-diagonal entries to `(row, col)`.
pub fn off_diagonal_index(n: usize, k: usize) -> (usize, usize) {
    let row = k / (n - 1);
    let c = k % (n - 1);
    (row, if c < row { c } else { c + 1 })
}

/// Deletes `n(n−1) − round(density·n(n−1))` off-diagonal entries, sampled
/// without replacement with per-edge weight `p_ij`.
///
/// Every positive-mass edge receives the key `Exp(1) / p_ij` and the smallest
/// keys are removed, which matches sequential renormalized draws in
/// distribution. If the positive-mass edges run out, the remainder is removed
/// uniformly from the survivors.
pub fn prune<R: Rng + ?Sized>(
    dense: &DMatrix<f64>,
    p: &PruneProbabilities,
    density: f64,
    rng: &mut R,
) -> DMatrix<f64> {
    let n = dense.nrows();
    let mut out = dense.clone();
    for i in 0..n {
        out[(i, i)] = 0.0;
    }
    if n < 2 {
        return out;
    }
    let total = n * (n - 1);
    let remove = total - retained_edge_count(n, density);
    if remove == 0 {
        return out;
    }

    let mut keyed: Vec<(f64, usize)> = Vec::with_capacity(total);
    let mut zero_mass: Vec<usize> = Vec::new();
    for k in 0..total {
        let (i, j) = off_diagonal_index(n, k);
        let pij = p.get(i, j);
        if pij > 0.0 {
            let e: f64 = Exp1.sample(rng);
            keyed.push((e / pij, k));
        } else {
            zero_mass.push(k);
        }
    }

    let by_key = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    if keyed.len() > remove {
        keyed.select_nth_unstable_by(remove, by_key);
        keyed.truncate(remove);
    }
    let deficit = remove - keyed.len();
    for &(_, k) in &keyed {
        let (i, j) = off_diagonal_index(n, k);
        out[(i, j)] = 0.0;
    }
    if deficit > 0 {
        for pos in index::sample(rng, zero_mass.len(), deficit) {
            let (i, j) = off_diagonal_index(n, zero_mass[pos]);
            out[(i, j)] = 0.0;
        }
    }
    out
}

/// Uniform pruning to the same retained count.
pub fn prune_uniform<R: Rng + ?Sized>(
    dense: &DMatrix<f64>,
    density: f64,
    rng: &mut R,
) -> DMatrix<f64> {
    let n = dense.nrows();
    let mut out = dense.clone();
    for i in 0..n {
        out[(i, i)] = 0.0;
    }
    if n < 2 {
        return out;
    }
    let total = n * (n - 1);
    let remove = total - retained_edge_count(n, density);
    for k in index::sample(rng, total, remove) {
        let (i, j) = off_diagonal_index(n, k);
        out[(i, j)] = 0.0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;
    use crate::topology::{dense_weights, neurogenetic_constraint};

    fn nonzero_off_diag(m: &DMatrix<f64>) -> usize {
        let n = m.nrows();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && m[(i, j)] != 0.0)
            .count()
    }

    fn uniform_p(n: usize) -> PruneProbabilities {
        let mut p = DMatrix::from_element(n, n, 1.0 / (n * (n - 1)) as f64);
        for i in 0..n {
            p[(i, i)] = 0.0;
        }
        PruneProbabilities(p)
    }

    #[test]
    fn off_diagonal_index_enumerates_row_major() {
        let got: Vec<_> = (0..6).map(|k| off_diagonal_index(3, k)).collect();
        assert_eq!(got, vec![(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]);
    }

    #[test]
    fn full_density_keeps_everything() {
        let dense = dense_weights(6, 1.0, &mut rng_from_seed(1));
        let out = prune(&dense, &uniform_p(6), 1.0, &mut rng_from_seed(2));
        assert_eq!(out, dense);
    }

    #[test]
    fn three_nodes_half_density_keeps_three() {
        let dense = dense_weights(3, 1.0, &mut rng_from_seed(1));
        let out = prune(&dense, &uniform_p(3), 0.5, &mut rng_from_seed(2));
        assert_eq!(nonzero_off_diag(&out), 3);
        assert!((0..3).all(|i| out[(i, i)] == 0.0));
    }

    #[test]
    fn zero_mass_edges_survive_while_positive_mass_remains() {
        let n = 10;
        let dense = dense_weights(n, 1.0, &mut rng_from_seed(3));
        let mut p = uniform_p(n);
        p.0[(2, 7)] = 0.0;
        p.0[(5, 1)] = 0.0;
        for seed in 0..20 {
            let out = prune(&dense, &p, 0.1, &mut rng_from_seed(seed));
            assert_ne!(out[(2, 7)], 0.0);
            assert_ne!(out[(5, 1)], 0.0);
            assert_eq!(nonzero_off_diag(&out), 9);
        }
    }

    #[test]
    fn exhausted_positive_mass_falls_back_to_uniform() {
        let n = 5;
        let dense = dense_weights(n, 1.0, &mut rng_from_seed(3));
        let mut p = DMatrix::zeros(n, n);
        p[(0, 1)] = 0.5;
        p[(1, 0)] = 0.5;
        let out = prune(&dense, &PruneProbabilities(p), 0.25, &mut rng_from_seed(1));
        assert_eq!(out[(0, 1)], 0.0);
        assert_eq!(out[(1, 0)], 0.0);
        assert_eq!(nonzero_off_diag(&out), 5);
    }

    #[test]
    fn high_mass_edges_are_deleted_more_often() {
        let n = 12;
        let dense = dense_weights(n, 1.0, &mut rng_from_seed(3));
        let mut p = neurogenetic_constraint(n).map(|v| v * v);
        for i in 0..n {
            p[(i, i)] = 0.0;
        }
        let s = p.sum();
        let p = PruneProbabilities(p / s);
        let mut low_kept = 0;
        let mut high_kept = 0;
        for seed in 0..200 {
            let out = prune(&dense, &p, 0.5, &mut rng_from_seed(seed));
            low_kept += (out[(0, 1)] != 0.0) as usize;
            high_kept += (out[(10, 11)] != 0.0) as usize;
        }
        assert!(low_kept > 190, "{low_kept}");
        assert!(high_kept < 40, "{high_kept}");
    }

    #[test]
    fn uniform_prune_exact_count() {
        let dense = dense_weights(30, 1.0, &mut rng_from_seed(3));
        let out = prune_uniform(&dense, 0.2, &mut rng_from_seed(4));
        assert_eq!(nonzero_off_diag(&out), retained_edge_count(30, 0.2));
    }
}
