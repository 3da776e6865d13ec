//! Dense `N×N` density matrices with complete dephasing between `|a⟩` and `|b⟩`.
//!
//! Operators are applied to the dense matrix through their exact action
//! (`U` is diagonal, `V` is a rank-one update of `−I`), so one Grover step
//! costs `O(N²)`. [`grover_operator_matrix`] builds `VU` explicitly for
//! cross-checking that action on small `N`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::state::FullState;
use crate::error::{Error, Result};

/// Largest `N` accepted for dense density-matrix evolution.
pub const DENSE_MAX_N: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq)]
pub struct FullDensity {
    matrix: DMatrix<Complex64>,
    marked: usize,
}

impl FullDensity {
    pub fn new(matrix: DMatrix<Complex64>, marked: usize) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(Error::Dimension {
                expected: n,
                got: matrix.ncols(),
            });
        }
        check_dense(n)?;
        if marked >= n {
            return Err(Error::MarkedIndex { index: marked, n });
        }
        Ok(Self { matrix, marked })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(state: &FullState) -> Result<Self> {
        let psi = nalgebra::DVector::from_column_slice(state.amplitudes());
        Self::new(&psi * psi.adjoint(), state.marked())
    }

    /// `I/N`, the incoherent uniform ensemble.
    pub fn maximally_mixed(n: usize, marked: usize) -> Result<Self> {
        check_dense(n)?;
        let weight = Complex64::new(1.0 / n as f64, 0.0);
        Self::new(DMatrix::from_diagonal_element(n, n, weight), marked)
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `max |ρ − ρ†|` over entries.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let hermitian = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        hermitian.symmetric_eigenvalues().min()
    }

    pub fn population(&self, index: usize) -> f64 {
        self.matrix[(index, index)].re
    }

    /// `⟨a|ρ|a⟩`.
    pub fn marked_population(&self) -> f64 {
        self.population(self.marked)
    }

    /// `⟨b|ρ|b⟩` with `|b⟩` the uniform superposition of unmarked states.
    pub fn complement_population(&self) -> f64 {
        let b = complement_vector(self.n(), self.marked);
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..self.n() {
            for j in 0..self.n() {
                total += b[i] * self.matrix[(i, j)] * b[j];
            }
        }
        total.re
    }

    /// `⟨a|ρ|b⟩`.
    pub fn ab_coherence(&self) -> Complex64 {
        let b = complement_vector(self.n(), self.marked);
        (0..self.n()).map(|j| self.matrix[(self.marked, j)] * b[j]).sum()
    }

    /// `ρ → (VU) ρ (VU)†`.
    pub fn conjugate_grover_step(&mut self) {
        self.conjugate_oracle();
        self.conjugate_diffusion();
    }

    fn conjugate_oracle(&mut self) {
        let a = self.marked;
        for j in 0..self.n() {
            if j != a {
                self.matrix[(a, j)] = -self.matrix[(a, j)];
                self.matrix[(j, a)] = -self.matrix[(j, a)];
            }
        }
    }

    // VρV = ρ − 2Pρ − 2ρP + 4PρP with P = |+⟩⟨+|.
    fn conjugate_diffusion(&mut self) {
        let n = self.n();
        let nf = n as f64;
        let col_means: Vec<Complex64> = (0..n).map(|j| self.matrix.column(j).sum() / nf).collect();
        let row_means: Vec<Complex64> = (0..n).map(|i| self.matrix.row(i).sum() / nf).collect();
        let grand = col_means.iter().sum::<Complex64>() / nf;
        for (j, mut column) in self.matrix.column_iter_mut().enumerate() {
            let shift = 4.0 * grand - 2.0 * col_means[j];
            for (z, r) in column.iter_mut().zip(&row_means) {
                *z += shift - 2.0 * r;
            }
        }
    }
}

fn check_dense(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidSize { min: 2, got: n as u64 });
    }
    if n > DENSE_MAX_N {
        return Err(Error::DenseBound { n, max: DENSE_MAX_N });
    }
    Ok(())
}

/// Real coefficients of `|b⟩ = (N−1)^{-1/2} Σ_{i≠a} |i⟩`.
fn complement_vector(n: usize, marked: usize) -> Vec<f64> {
    let amp = ((n - 1) as f64).sqrt().recip();
    (0..n).map(|i| if i == marked { 0.0 } else { amp }).collect()
}

/// Complete dephasing in the `{|a⟩, |b⟩, complement}` split.
///
/// Pinches `ρ` into `P_a ρ P_a + P_b ρ P_b + P_⊥ ρ P_⊥`: coherences between
/// `|a⟩` and `|b⟩` (and between either and the complement) are removed,
/// populations are kept, and the complement block is left untouched.
pub fn dephase_ab(density: &FullDensity) -> FullDensity {
    let n = density.n();
    let a = density.marked;
    let rho = &density.matrix;
    let b = complement_vector(n, a);

    // Rows ⟨x|ρ and columns ρ|x⟩ for x ∈ {a, b}.
    let row_a: Vec<Complex64> = (0..n).map(|j| rho[(a, j)]).collect();
    let col_a: Vec<Complex64> = (0..n).map(|i| rho[(i, a)]).collect();
    let mut row_b = vec![Complex64::new(0.0, 0.0); n];
    let mut col_b = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        for i in 0..n {
            let z = rho[(i, j)];
            row_b[j] += b[i] * z;
            col_b[i] += z * b[j];
        }
    }
    let m_aa = row_a[a];
    let m_ab: Complex64 = (0..n).map(|j| row_a[j] * b[j]).sum();
    let m_ba: Complex64 = (0..n).map(|i| b[i] * col_a[i]).sum();
    let m_bb: Complex64 = (0..n).map(|j| row_b[j] * b[j]).sum();

    // ρ' = ρ − Qρ − ρQ + B(M + diag M)B† with Q = |a⟩⟨a| + |b⟩⟨b|.
    let e = |i: usize| if i == a { 1.0 } else { 0.0 };
    let mut out = rho.clone();
    for j in 0..n {
        for i in 0..n {
            let q_rho = e(i) * row_a[j] + b[i] * row_b[j];
            let rho_q = col_a[i] * e(j) + col_b[i] * b[j];
            let block = 2.0 * m_aa * e(i) * e(j) + m_ab * e(i) * b[j] + m_ba * b[i] * e(j) + 2.0 * m_bb * b[i] * b[j];
            out[(i, j)] += block - q_rho - rho_q;
        }
    }
    FullDensity { matrix: out, marked: a }
}

/// `ρ̄₀`: the dephased uniform superposition.
pub fn dephased_initial_density(n: usize, marked: usize) -> Result<FullDensity> {
    check_dense(n)?;
    let plus = FullState::uniform(n, marked)?;
    Ok(dephase_ab(&FullDensity::from_pure(&plus)?))
}

/// `⟨a|ρ̄_k|a⟩` for every `k` in `0..=k_max`, alternating `VU` conjugation
/// and [`dephase_ab`].
pub fn dephased_trajectory_full(n: usize, marked: usize, k_max: u64) -> Result<Vec<f64>> {
    let mut rho = dephased_initial_density(n, marked)?;
    let mut out = Vec::with_capacity(k_max as usize + 1);
    out.push(rho.marked_population());
    for _ in 0..k_max {
        rho.conjugate_grover_step();
        rho = dephase_ab(&rho);
        out.push(rho.marked_population());
    }
    Ok(out)
}

/// `⟨a|ρ̄_k|a⟩` after `k` rounds of Grover iteration plus dephasing.
pub fn evolve_dephased_full(n: usize, marked: usize, k: u64) -> Result<f64> {
    Ok(*dephased_trajectory_full(n, marked, k)?
        .last()
        .expect("trajectory is never empty"))
}

/// Explicit `VU` as a dense matrix.
pub fn grover_operator_matrix(n: usize, marked: usize) -> Result<DMatrix<Complex64>> {
    check_dense(n)?;
    if marked >= n {
        return Err(Error::MarkedIndex { index: marked, n });
    }
    let nf = n as f64;
    let v = DMatrix::from_fn(n, n, |i, j| {
        let p = 2.0 / nf - if i == j { 1.0 } else { 0.0 };
        Complex64::new(p, 0.0)
    });
    let u = DMatrix::from_fn(n, n, |i, j| match (i == j, i == marked) {
        (false, _) => Complex64::new(0.0, 0.0),
        (true, true) => Complex64::new(-1.0, 0.0),
        (true, false) => Complex64::new(1.0, 0.0),
    });
    Ok(v * u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn max_abs_diff(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> f64 {
        x.iter().zip(y.iter()).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
    }

    fn test_density(n: usize, marked: usize) -> FullDensity {
        // Deterministic full-rank density with coherences everywhere.
        let g = DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(((i * 7 + j * 3) % 11) as f64 - 5.0, ((i * 5 + j * 2) % 7) as f64 - 3.0)
        });
        let rho = &g * g.adjoint();
        let tr = rho.trace();
        FullDensity::new(rho / tr, marked).unwrap()
    }

    #[test]
    fn structured_step_matches_explicit_operator() {
        for (n, a) in [(2, 1), (4, 0), (7, 3), (16, 15)] {
            let mut rho = test_density(n, a);
            let g = grover_operator_matrix(n, a).unwrap();
            let expected = &g * rho.matrix() * g.adjoint();
            rho.conjugate_grover_step();
            assert!(max_abs_diff(rho.matrix(), &expected) < 1e-13, "N = {n}");
        }
    }

    #[test]
    fn dephasing_matches_projector_formula() {
        let (n, a) = (6, 2);
        let rho = test_density(n, a);
        let b = complement_vector(n, a);
        let to_vec = |v: Vec<f64>| nalgebra::DVector::from_iterator(n, v.into_iter().map(|x| Complex64::new(x, 0.0)));
        let ea = to_vec((0..n).map(|i| if i == a { 1.0 } else { 0.0 }).collect());
        let eb = to_vec(b);
        let pa = &ea * ea.adjoint();
        let pb = &eb * eb.adjoint();
        let perp = DMatrix::identity(n, n) - &pa - &pb;
        let expected = &pa * rho.matrix() * &pa + &pb * rho.matrix() * &pb + &perp * rho.matrix() * &perp;
        assert!(max_abs_diff(dephase_ab(&rho).matrix(), &expected) < 1e-14);
    }

    #[test]
    fn dephase_examples() {
        let plus = FullState::uniform(4, 0).unwrap();
        let rho = dephase_ab(&FullDensity::from_pure(&plus).unwrap());
        assert_abs_diff_eq!(rho.marked_population(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.complement_population(), 0.75, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.ab_coherence().norm(), 0.0, epsilon = 1e-15);

        let twice = dephase_ab(&rho);
        assert!(max_abs_diff(twice.matrix(), rho.matrix()) < 1e-15);

        let mixed = FullDensity::maximally_mixed(8, 3).unwrap();
        assert!(max_abs_diff(dephase_ab(&mixed).matrix(), mixed.matrix()) < 1e-15);
    }

    #[test]
    fn evolve_examples() {
        assert_abs_diff_eq!(evolve_dephased_full(4, 0, 1).unwrap(), 0.625, epsilon = 1e-14);
        for n in [2usize, 5, 32] {
            assert_abs_diff_eq!(
                evolve_dephased_full(n, n - 1, 0).unwrap(),
                1.0 / n as f64,
                epsilon = 1e-15
            );
        }
        assert!(matches!(
            evolve_dephased_full(DENSE_MAX_N + 1, 0, 1),
            Err(Error::DenseBound { .. })
        ));
    }

    #[test]
    fn maximally_mixed_is_uniform() {
        let rho = FullDensity::maximally_mixed(5, 0).unwrap();
        assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-15);
        for i in 0..5 {
            assert_abs_diff_eq!(rho.population(i), 0.2, epsilon = 1e-16);
        }
        assert!(rho.min_eigenvalue() > 0.0);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(FullDensity::new(DMatrix::zeros(3, 4), 0).is_err());
        assert!(FullDensity::new(DMatrix::zeros(3, 3), 3).is_err());
        assert!(grover_operator_matrix(4, 9).is_err());
    }
}
