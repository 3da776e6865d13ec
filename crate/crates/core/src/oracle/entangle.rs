//! Reduced density matrices and purity-based entanglement detection for the
//! `n`-qubit realization `N = 2^n`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::state::{apply_grover_iterations, FullState};
use crate::error::{Error, Result};
use crate::grover::GroverGeometry;

/// Purity deficit below which a reduced state counts as pure.
pub const DEFAULT_ENTANGLEMENT_TOL: f64 = 1e-9;

/// `|sin 2kθ|` or `|cos(2k+1)θ|` at or below this value is treated as zero
/// when predicting product iterates.
pub const EXCEPTION_EPS: f64 = 1e-7;

/// `n` qubits with a subset kept after the partial trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitFactorization {
    n_qubits: usize,
    kept: Vec<usize>,
}

impl QubitFactorization {
    pub fn new(n_qubits: usize, mut kept: Vec<usize>) -> Result<Self> {
        kept.sort_unstable();
        kept.dedup();
        if n_qubits < 2 {
            return Err(Error::InvalidBipartition(format!(
                "need at least 2 qubits to bipartition, got {n_qubits}"
            )));
        }
        if kept.is_empty() || kept.len() >= n_qubits {
            return Err(Error::InvalidBipartition(format!(
                "kept subsystem must hold between 1 and {} qubits, got {}",
                n_qubits - 1,
                kept.len()
            )));
        }
        if let Some(&q) = kept.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::InvalidBipartition(format!(
                "qubit {q} out of range for {n_qubits} qubits"
            )));
        }
        Ok(Self { n_qubits, kept })
    }

    /// Factorization for a problem size, which must be a power of two.
    pub fn for_size(n: usize, kept: Vec<usize>) -> Result<Self> {
        Self::new(qubit_count(n)?, kept)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Every `{q} | rest` split.
    pub fn single_qubit_splits(n_qubits: usize) -> Result<Vec<Self>> {
        (0..n_qubits).map(|q| Self::new(n_qubits, vec![q])).collect()
    }

    fn bit(&self, qubit: usize) -> usize {
        self.n_qubits - 1 - qubit
    }
}

pub fn qubit_count(n: usize) -> Result<usize> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(n.trailing_zeros() as usize)
}

/// Partial trace of `|ψ⟩⟨ψ|` over every qubit not in `factorization.kept()`.
pub fn reduced_density(state: &FullState, factorization: &QubitFactorization) -> Result<DMatrix<Complex64>> {
    let n = state.len();
    let n_qubits = qubit_count(n)?;
    if n_qubits != factorization.n_qubits {
        return Err(Error::Dimension {
            expected: 1 << factorization.n_qubits,
            got: n,
        });
    }
    let kept_bits: Vec<usize> = factorization.kept.iter().map(|&q| factorization.bit(q)).collect();
    let traced_bits: Vec<usize> = (0..n_qubits)
        .map(|q| factorization.bit(q))
        .filter(|b| !kept_bits.contains(b))
        .collect();
    let scatter = |bits: &[usize], value: usize| {
        // bits[0] receives the most significant bit of `value`.
        bits.iter().enumerate().fold(0usize, |acc, (pos, &b)| {
            acc | (((value >> (bits.len() - 1 - pos)) & 1) << b)
        })
    };

    let dim = 1usize << kept_bits.len();
    let env = 1usize << traced_bits.len();
    let psi = state.amplitudes();
    let mut rho = DMatrix::zeros(dim, dim);
    for e in 0..env {
        let e_index = scatter(&traced_bits, e);
        for i in 0..dim {
            let zi = psi[e_index | scatter(&kept_bits, i)];
            if zi == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..dim {
                rho[(i, j)] += zi * psi[e_index | scatter(&kept_bits, j)].conj();
            }
        }
    }
    Ok(rho)
}

/// `Tr ρ²` of a Hermitian matrix.
pub fn purity(rho: &DMatrix<Complex64>) -> f64 {
    rho.iter().map(|z| z.norm_sqr()).sum()
}

/// Whether the reduced state of the kept qubits is mixed beyond `tol`.
pub fn is_entangled(state: &FullState, factorization: &QubitFactorization, tol: f64) -> Result<bool> {
    Ok(purity(&reduced_density(state, factorization)?) < 1.0 - tol)
}

/// `(VU)^k|+⟩` is a product state when it equals `±|+⟩` (`sin 2kθ = 0`)
/// or `±|a⟩` (`cos(2k+1)θ = 0`).
pub fn predicted_product(geometry: &GroverGeometry, k: u64) -> bool {
    let (sin_2k, _) = geometry.multiple_angle(2 * k);
    let (_, cos_2k1) = geometry.multiple_angle(2 * k + 1);
    sin_2k.abs() <= EXCEPTION_EPS || cos_2k1.abs() <= EXCEPTION_EPS
}

/// One `(k, qubit)` cell of an entanglement scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanEntry {
    pub k: u64,
    pub qubit: usize,
    pub purity: f64,
    pub entangled: bool,
    pub predicted_product: bool,
}

impl ScanEntry {
    /// Detector and closed-form prediction agree.
    pub fn consistent(&self) -> bool {
        self.entangled != self.predicted_product
    }
}

/// Scans `k = 0..=⌈π/θ⌉` for the marked state `|0…0⟩` on `n_qubits` qubits and
/// reports every single-qubit split.
pub fn entanglement_scan(n_qubits: usize, tol: f64) -> Result<Vec<ScanEntry>> {
    if !(2..=24).contains(&n_qubits) {
        return Err(Error::InvalidBipartition(format!("cannot scan {n_qubits} qubits")));
    }
    let n = 1usize << n_qubits;
    let geometry = GroverGeometry::new(n as u64)?;
    let splits = QubitFactorization::single_qubit_splits(n_qubits)?;
    let k_max = (std::f64::consts::PI / geometry.theta()).ceil() as u64;

    let mut state = FullState::uniform(n, 0)?;
    let mut out = Vec::new();
    for k in 0..=k_max {
        let predicted = predicted_product(&geometry, k);
        for split in &splits {
            let p = purity(&reduced_density(&state, split)?);
            out.push(ScanEntry {
                k,
                qubit: split.kept[0],
                purity: p,
                entangled: p < 1.0 - tol,
                predicted_product: predicted,
            });
        }
        state = apply_grover_iterations(&state, 1);
    }
    Ok(out)
}
