//! Independent oracles and generators shared by the integration tests.

#![allow(dead_code)]

use crowdwise_core::{InfluenceNetwork, NoiseModel, SelfConfidenceProfile};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random irreducible, aperiodic stochastic matrix on `n` nodes: a random
/// Hamiltonian cycle, extra edges with probability `density`, and a
/// self-loop on at least one node.
pub fn random_network<R: Rng>(rng: &mut R, n: usize, density: f64) -> InfluenceNetwork {
    loop {
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let mut w = vec![vec![0.0; n]; n];
        for k in 0..n {
            w[order[k]][order[(k + 1) % n]] = rng.random_range(0.05..1.0);
        }
        for row in w.iter_mut() {
            for v in row.iter_mut() {
                if *v == 0.0 && rng.random_bool(density) {
                    *v = rng.random_range(0.05..1.0);
                }
            }
        }
        let lazy = rng.random_range(0..n);
        if w[lazy][lazy] == 0.0 {
            w[lazy][lazy] = rng.random_range(0.05..1.0);
        }
        for row in w.iter_mut() {
            let s: f64 = row.iter().sum();
            row.iter_mut().for_each(|v| *v /= s);
        }
        if let Ok(net) = InfluenceNetwork::from_rows(&w) {
            return net;
        }
    }
}

pub fn random_noise<R: Rng>(rng: &mut R, n: usize) -> NoiseModel {
    NoiseModel::new(0.0, (0..n).map(|_| rng.random_range(0.05..3.0)).collect()).unwrap()
}

pub fn profile(v: &[f64]) -> SelfConfidenceProfile {
    SelfConfidenceProfile::new(v.to_vec()).unwrap()
}

/// `W(z)` built entry by entry.
pub fn w_matrix(p: &DMatrix<f64>, z: &[f64]) -> DMatrix<f64> {
    let n = p.nrows();
    DMatrix::from_fn(n, n, |i, j| {
        let own = if i == j { z[i] } else { 0.0 };
        (1.0 - z[i]) * p[(i, j)] + own
    })
}

/// `lim W^t` by repeated squaring until successive powers agree to 1e-15.
/// Rows are renormalised after every product so round-off in the row sums
/// cannot compound.
pub fn limit_by_squaring(w: &DMatrix<f64>) -> DMatrix<f64> {
    let mut a = w.clone();
    for _ in 0..100 {
        let mut b = &a * &a;
        for mut row in b.row_iter_mut() {
            let s = row.sum();
            row /= s;
        }
        let diff = (&b - &a).amax();
        a = b;
        if diff <= 1e-15 {
            break;
        }
    }
    a
}

/// Stationary vector as a row of `lim P^t`.
pub fn stationary_by_power(p: &DMatrix<f64>) -> DVector<f64> {
    limit_by_squaring(p).row(0).transpose()
}

/// `Σ_j H_ij² σ_j²` for every `i`, with `H` from repeated squaring.
pub fn variances_by_squaring(p: &DMatrix<f64>, z: &[f64], sigma2: &[f64]) -> Vec<f64> {
    let h = limit_by_squaring(&w_matrix(p, z));
    (0..p.nrows())
        .map(|i| (0..p.ncols()).map(|j| h[(i, j)].powi(2) * sigma2[j]).sum())
        .collect()
}

/// Common cost of an interior profile: left Perron vector of `W(z)` via a
/// dense solve, then `Σ_j p_j² σ_j²`.
pub fn interior_cost_by_solve(p: &DMatrix<f64>, z: &[f64], sigma2: &[f64]) -> f64 {
    let n = p.nrows();
    let mut a = w_matrix(p, z).transpose() - DMatrix::identity(n, n);
    a.row_mut(n - 1).fill(1.0);
    let mut rhs = DVector::zeros(n);
    rhs[n - 1] = 1.0;
    let power = a.lu().solve(&rhs).expect("nonsingular");
    power.iter().zip(sigma2).map(|(q, s)| q * q * s).sum()
}

/// Boolean reachability closure (paths of length ≥ 1).
pub fn closure(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut r = adj.to_vec();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
            }
        }
    }
    r
}

/// Number of strongly connected components from mutual reachability.
pub fn scc_count_brute(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    let r = closure(adj);
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for i in 0..n {
        if label[i] != usize::MAX {
            continue;
        }
        for j in 0..n {
            if j == i || (r[i][j] && r[j][i]) {
                label[j] = count;
            }
        }
        count += 1;
    }
    count
}

/// gcd of the lengths `k ≤ n` of closed walks; equals the period of a
/// strongly connected graph since every simple cycle has length ≤ n.
pub fn period_brute(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    let mut walk = adj.to_vec();
    let mut g = 0usize;
    for k in 1..=n {
        if (0..n).any(|i| walk[i][i]) {
            let (mut a, mut b) = (g, k);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            g = a;
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for m in 0..n {
                if walk[i][m] {
                    for j in 0..n {
                        next[i][j] |= adj[m][j];
                    }
                }
            }
        }
        walk = next;
    }
    g
}
