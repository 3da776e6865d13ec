use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest statevector the oracle will build.
pub const STATEVECTOR_MAX_N: usize = 1 << 24;

/// Amplitudes over the computational basis together with the marked index.
///
/// Indices are zero-based. On `n` qubits, qubit 0 is the most significant bit
/// of the index, so `|0…0⟩` is index 0.
#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    amplitudes: Vec<Complex64>,
    marked: usize,
}

const NORM_TOLERANCE: f64 = 1e-10;

impl FullState {
    pub fn new(amplitudes: Vec<Complex64>, marked: usize) -> Result<Self> {
        let n = amplitudes.len();
        check_size(n)?;
        if marked >= n {
            return Err(Error::MarkedIndex { index: marked, n });
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Config(format!("state norm² is {norm}, expected 1")));
        }
        Ok(Self { amplitudes, marked })
    }

    /// `|+⟩ = N^{-1/2} Σ_i |i⟩`.
    pub fn uniform(n: usize, marked: usize) -> Result<Self> {
        check_size(n)?;
        let amp = Complex64::new((n as f64).sqrt().recip(), 0.0);
        Self::new(vec![amp; n], marked)
    }

    pub fn basis(n: usize, index: usize, marked: usize) -> Result<Self> {
        check_size(n)?;
        if index >= n {
            return Err(Error::MarkedIndex { index, n });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self::new(amplitudes, marked)
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    pub fn marked_probability(&self) -> f64 {
        self.probability(self.marked)
    }

    /// Multiplies the marked amplitude by `e^{iφ}`.
    pub fn with_marked_phase(mut self, phi: f64) -> Self {
        self.amplitudes[self.marked] *= Complex64::from_polar(1.0, phi);
        self
    }

    /// Largest distance between any unmarked amplitude and their mean.
    pub fn unmarked_spread(&self) -> f64 {
        let others = || {
            self.amplitudes
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != self.marked)
                .map(|(_, z)| *z)
        };
        let count = (self.len() - 1) as f64;
        let mean = others().sum::<Complex64>() / count;
        others().map(|z| (z - mean).norm()).fold(0.0, f64::max)
    }

    pub(crate) fn oracle_in_place(&mut self) {
        self.amplitudes[self.marked] = -self.amplitudes[self.marked];
    }

    pub(crate) fn diffusion_in_place(&mut self) {
        let n = self.len() as f64;
        let mean = self.amplitudes.iter().sum::<Complex64>() / n;
        for z in &mut self.amplitudes {
            *z = 2.0 * mean - *z;
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidSize { min: 2, got: n as u64 });
    }
    if n > STATEVECTOR_MAX_N {
        return Err(Error::DenseBound {
            n,
            max: STATEVECTOR_MAX_N,
        });
    }
    Ok(())
}

/// `U = Σ_{i≠a}|i⟩⟨i| − |a⟩⟨a|`.
pub fn apply_oracle_u(state: &FullState) -> FullState {
    let mut out = state.clone();
    out.oracle_in_place();
    out
}

/// `V = 2|+⟩⟨+| − I`: every amplitude is reflected about the mean.
pub fn apply_diffusion_v(state: &FullState) -> FullState {
    let mut out = state.clone();
    out.diffusion_in_place();
    out
}

/// `(VU)^k |ψ⟩`.
pub fn apply_grover_iterations(state: &FullState, k: u64) -> FullState {
    let mut out = state.clone();
    for _ in 0..k {
        out.oracle_in_place();
        out.diffusion_in_place();
    }
    out
}

/// `|⟨a|(VU)^k|+⟩|²` for every `k` in `0..=k_max`, from one dense run.
pub fn coherent_trajectory(n: usize, marked: usize, k_max: u64) -> Result<Vec<f64>> {
    let mut state = FullState::uniform(n, marked)?;
    let mut out = Vec::with_capacity(k_max as usize + 1);
    out.push(state.marked_probability());
    for _ in 0..k_max {
        state.oracle_in_place();
        state.diffusion_in_place();
        out.push(state.marked_probability());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn oracle_examples() {
        let plus = FullState::uniform(4, 0).unwrap();
        let out = apply_oracle_u(&plus);
        assert_eq!(out.amplitudes(), &[c(-0.5), c(0.5), c(0.5), c(0.5)]);
        assert_eq!(apply_oracle_u(&out), plus);

        let e2 = FullState::basis(8, 2, 5).unwrap();
        assert_eq!(apply_oracle_u(&e2), e2);
    }

    #[test]
    fn diffusion_examples() {
        let plus = FullState::uniform(16, 3).unwrap();
        let v_plus = apply_diffusion_v(&plus);
        for (x, y) in v_plus.amplitudes().iter().zip(plus.amplitudes()) {
            assert_abs_diff_eq!((x - y).norm(), 0.0, epsilon = 1e-15);
        }
        let s = FullState::new(vec![c(0.6), Complex64::new(0.0, 0.8), c(0.0)], 1).unwrap();
        let back = apply_diffusion_v(&apply_diffusion_v(&s));
        for (x, y) in back.amplitudes().iter().zip(s.amplitudes()) {
            assert_abs_diff_eq!((x - y).norm(), 0.0, epsilon = 1e-15);
        }

        let one = apply_grover_iterations(&FullState::uniform(4, 0).unwrap(), 1);
        assert_abs_diff_eq!(one.marked_probability(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_states() {
        assert!(FullState::uniform(1, 0).is_err());
        assert!(FullState::uniform(4, 4).is_err());
        assert!(FullState::new(vec![c(1.0), c(1.0)], 0).is_err());
        assert!(matches!(
            FullState::uniform(STATEVECTOR_MAX_N + 1, 0),
            Err(Error::DenseBound { .. })
        ));
    }

    #[test]
    fn trajectory_starts_at_one_over_n() {
        let t = coherent_trajectory(64, 17, 3).unwrap();
        assert_eq!(t.len(), 4);
        assert_abs_diff_eq!(t[0], 1.0 / 64.0, epsilon = 1e-16);
    }
}
