#![allow(dead_code)]

use grover_dephasing::oracle::FullDensity;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// `G G† / Tr(G G†)` with i.i.d. complex Gaussian `G`: full-rank, generic
/// coherences everywhere.
pub fn random_density(n: usize, rng: &mut ChaCha8Rng) -> FullDensity {
    let g = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let rho = &g * g.adjoint();
    let tr = rho.trace();
    let marked = rng.random_range(0..n);
    FullDensity::new(rho / tr, marked).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
