#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slpot::mat::SymMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric matrix with entries uniform in `[-half_width, half_width]`.
pub fn random_sym(rng: &mut ChaCha8Rng, n: usize, half_width: f64) -> SymMatrix {
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-half_width..half_width);
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
    }
    SymMatrix::new(n, entries).expect("finite entries")
}

/// Positive semidefinite matrix `B^T B` with `B` uniform in `[-s, s]`.
pub fn random_psd(rng: &mut ChaCha8Rng, n: usize, s: f64) -> SymMatrix {
    let b: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-s..s)).collect();
    SymMatrix::from_fn(n, |i, j| (0..n).map(|r| b[r * n + i] * b[r * n + j]).sum())
}

/// Matrix with the given spectrum, conjugated by a random Householder
/// reflection so it is not diagonal.
pub fn rotated_diag(rng: &mut ChaCha8Rng, eigs: &[f64]) -> SymMatrix {
    let n = eigs.len();
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0f64)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm < 1e-6 {
        v[0] = 1.0;
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut v {
        *x /= norm;
    }
    let q: Vec<f64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let delta = if i == j { 1.0 } else { 0.0 };
            delta - 2.0 * v[i] * v[j]
        })
        .collect();
    SymMatrix::diag(eigs).congruence(&q)
}

/// One phase per open interval (midpoints) and every special value.
pub fn theta_samples(n: usize) -> Vec<f64> {
    let mut thetas = Vec::new();
    for k in 1..=n {
        let (lo, hi) = slpot::phase::interval_bounds(n, k);
        thetas.push(0.5 * (lo + hi));
        if k < n {
            thetas.push(slpot::phase::special_value(n, k));
        }
    }
    thetas
}
