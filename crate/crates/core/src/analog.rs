//! Continuous-time analog search (Farhi–Gutmann two-level model).
//!
//! The Hamiltonian couples the target `|w⟩` and the rest state `|r⟩`; the
//! start state `x|w⟩ + √(1−x²)|r⟩` rotates onto `|w⟩` after `t = π/(2xE)`.
//! Cutting the evolution into steps of length `Δt` and dephasing after each
//! step gives the same symmetric two-state chain as dephased Grover search,
//! with transfer `(1−x²)·sin²(xEΔt)` per step.

use num_complex::Complex64;

use crate::dephased::contraction_power;
use crate::error::{Error, Result};

/// Overlap `x`, energy scale `E` and step length `Δt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalogParams {
    x: f64,
    energy: f64,
    dt: f64,
}

impl AnalogParams {
    pub fn new(x: f64, energy: f64, dt: f64) -> Result<Self> {
        if !(x > 0.0 && x <= 1.0) {
            return Err(Error::InvalidAnalogParams(format!("x = {x} must lie in (0, 1]")));
        }
        if !(energy > 0.0 && energy.is_finite()) {
            return Err(Error::InvalidAnalogParams(format!("E = {energy} must be positive")));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidAnalogParams(format!("dt = {dt} must be positive")));
        }
        Ok(Self { x, energy, dt })
    }

    /// `x = 1/√N` with `E = 1` and `EΔt = energy_dt`.
    pub fn for_problem_size(n_elements: u64, energy_dt: f64) -> Result<Self> {
        if n_elements < 1 {
            return Err(Error::InvalidSize {
                min: 1,
                got: n_elements,
            });
        }
        Self::new((n_elements as f64).sqrt().recip(), 1.0, energy_dt)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Rotation angle `xEΔt` per step.
    pub fn step_angle(&self) -> f64 {
        self.x * self.energy * self.dt
    }

    fn rest_overlap(&self) -> f64 {
        (1.0 - self.x * self.x).sqrt()
    }

    /// `U(Δt) = e^{−iEΔt}[cos(xEΔt) − i sin(xEΔt) M]` with
    /// `M = [[x, √(1−x²)], [√(1−x²), −x]]`, in the `(|w⟩, |r⟩)` basis.
    pub fn step_unitary(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = self.step_angle().sin_cos();
        let phase = Complex64::from_polar(1.0, -self.energy * self.dt);
        let y = self.rest_overlap();
        let entry = |m: f64, diag: bool| {
            let diagonal = if diag { c } else { 0.0 };
            phase * Complex64::new(diagonal, -s * m)
        };
        [
            [entry(self.x, true), entry(y, false)],
            [entry(y, false), entry(-self.x, true)],
        ]
    }
}

/// Populations of `|w⟩` and `|r⟩` in a dephased state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalogWeights {
    pub w: f64,
    pub r: f64,
}

impl AnalogWeights {
    pub fn new(w: f64, r: f64) -> Self {
        Self { w, r }
    }

    /// `x²|w⟩⟨w| + (1−x²)|r⟩⟨r|`.
    pub fn initial(params: &AnalogParams) -> Self {
        let x2 = params.x * params.x;
        Self { w: x2, r: 1.0 - x2 }
    }

    pub fn total(&self) -> f64 {
        self.w + self.r
    }
}

/// Exact amplitudes `(coeff_w, coeff_r)` of `ψ(t)`, global phase included.
pub fn evolve_exact(params: &AnalogParams, t: f64) -> (Complex64, Complex64) {
    let (s, c) = (params.x * params.energy * t).sin_cos();
    let phase = Complex64::from_polar(1.0, -params.energy * t);
    (
        phase * Complex64::new(params.x * c, -s),
        phase * Complex64::new(params.rest_overlap() * c, 0.0),
    )
}

/// `|⟨w|ψ(t)⟩|² = sin²(xEt) + x²cos²(xEt)`.
pub fn coherent_success(params: &AnalogParams, t: f64) -> f64 {
    evolve_exact(params, t).0.norm_sqr()
}

/// Applies `U(Δt)` `k` times to `ψ(0)` by explicit 2×2 products.
pub fn evolve_stepwise(params: &AnalogParams, k: u64) -> (Complex64, Complex64) {
    let u = params.step_unitary();
    let mut psi = (
        Complex64::new(params.x, 0.0),
        Complex64::new(params.rest_overlap(), 0.0),
    );
    for _ in 0..k {
        psi = (u[0][0] * psi.0 + u[0][1] * psi.1, u[1][0] * psi.0 + u[1][1] * psi.1);
    }
    psi
}

/// Probability `(1−x²)·sin²(xEΔt)` that one dephased step swaps `|w⟩` and `|r⟩`.
pub fn dephased_transfer(params: &AnalogParams) -> f64 {
    let x2 = params.x * params.x;
    (1.0 - x2) * params.step_angle().sin().powi(2)
}

/// Leading small-step order `(xEΔt)²(1−x²)` of [`dephased_transfer`].
pub fn leading_order_transfer(params: &AnalogParams) -> f64 {
    let x2 = params.x * params.x;
    params.step_angle().powi(2) * (1.0 - x2)
}

/// Symmetric two-state Markov step with swap probability `transfer`.
pub fn symmetric_swap(weights: &AnalogWeights, transfer: f64) -> AnalogWeights {
    let stay = 1.0 - transfer;
    AnalogWeights {
        w: weights.w * stay + weights.r * transfer,
        r: weights.w * transfer + weights.r * stay,
    }
}

pub fn analog_classical_step(weights: &AnalogWeights, params: &AnalogParams) -> AnalogWeights {
    symmetric_swap(weights, dephased_transfer(params))
}

/// Weights after `k` dephased steps from the initial condition, by iteration.
pub fn analog_k_step(params: &AnalogParams, k: u64) -> AnalogWeights {
    let transfer = dephased_transfer(params);
    (0..k).fold(AnalogWeights::initial(params), |w, _| symmetric_swap(&w, transfer))
}

/// `w_k = 1/2 − (1/2 − x²)(1 − 2s)^k`.
pub fn analog_closed_form_w(params: &AnalogParams, k: u64) -> f64 {
    let x2 = params.x * params.x;
    0.5 - (0.5 - x2) * contraction_power(dephased_transfer(params), k)
}

/// Small-angle coherent estimate `|x − i·k·xEΔt|² = x² + (k·xEΔt)²`.
pub fn linearized_coherent_success(params: &AnalogParams, k: u64) -> f64 {
    params.x * params.x + (k as f64 * params.step_angle()).powi(2)
}

/// Small-angle dephased estimate `x² + k(xEΔt)²`; reduces to `x²(1+k)` at `EΔt = 1`.
pub fn linearized_dephased_w(params: &AnalogParams, k: u64) -> f64 {
    params.x * params.x + k as f64 * params.step_angle().powi(2)
}
