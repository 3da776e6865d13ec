//! Cross-checks between the closed forms and the brute-force oracle.

use serde::Serialize;

use super::config::Mode;
use super::sweep::find_k_star;
use crate::analog::{self, AnalogParams};
use crate::dephased;
use crate::error::{Error, Result};
use crate::grover::{self, GroverGeometry};
use crate::oracle::{self, DEFAULT_ENTANGLEMENT_TOL, DENSE_MAX_N};

/// Agreement between two routes that should match to rounding.
pub const ORACLE_TOL: f64 = 1e-10;
/// Unmarked amplitudes stay equal under `U` and `V`.
pub const CLOSURE_TOL: f64 = 1e-12;
/// Recurrences are iterated at most this many steps.
pub const RECURRENCE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Worst deviation seen (or worst deviation/bound ratio for bound checks).
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &str, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            max_deviation,
            tolerance,
            passed: max_deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub max_n: usize,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn size_grid(max_n: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = std::iter::successors(Some(2usize), |n| Some(n * 2))
        .take_while(|&n| n <= max_n)
        .collect();
    for extra in [3usize, 5, 7, 12] {
        if extra <= max_n {
            sizes.push(extra);
        }
    }
    sizes.sort_unstable();
    sizes
}

/// Iteration horizon for coherent and dense checks: three times the first peak.
fn horizon(g: &GroverGeometry) -> u64 {
    (3 * grover::optimal_k(g)).max(3)
}

/// Runs every cross-check up to problem size `max_n`.
pub fn validate_all(max_n: usize) -> Result<ValidationReport> {
    if max_n > DENSE_MAX_N {
        return Err(Error::DenseBound {
            n: max_n,
            max: DENSE_MAX_N,
        });
    }
    if max_n < 2 {
        return Err(Error::InvalidSize {
            min: 2,
            got: max_n as u64,
        });
    }
    let sizes = size_grid(max_n);
    let mut checks = Vec::new();

    // Coherent: 2D closed form against the dense statevector.
    let mut coherent = 0.0f64;
    let mut closure = 0.0f64;
    for &n in &sizes {
        let g = GroverGeometry::new(n as u64)?;
        let marked = n / 3;
        let mut state = oracle::FullState::uniform(n, marked)?;
        for k in 0..=horizon(&g) {
            coherent = coherent.max((state.marked_probability() - grover::success_probability(&g, k)).abs());
            closure = closure.max(state.unmarked_spread());
            state = oracle::apply_grover_iterations(&state, 1);
        }
    }
    checks.push(CheckResult::new(
        "coherent_closed_form_vs_statevector",
        coherent,
        ORACLE_TOL,
    ));
    checks.push(CheckResult::new(
        "coherent_two_dimensional_closure",
        closure,
        CLOSURE_TOL,
    ));

    // Dephased: closed form against the recurrence and the dense density matrix.
    let mut recurrence = 0.0f64;
    let mut dense = 0.0f64;
    for &n in &sizes {
        let g = GroverGeometry::new(n as u64)?;
        let mut w = dephased::dephase_initial(&g);
        for k in 0..=(4 * n as u64).min(RECURRENCE_CAP) {
            recurrence = recurrence.max((w.c - dephased::closed_form_c(&g, k)).abs());
            w = dephased::classical_step(&w, &g);
        }
        let trajectory = oracle::dephased_trajectory_full(n, n - 1, horizon(&g))?;
        for (k, p) in trajectory.iter().enumerate() {
            dense = dense.max((p - dephased::closed_form_c(&g, k as u64)).abs());
        }
    }
    checks.push(CheckResult::new(
        "dephased_closed_form_vs_recurrence",
        recurrence,
        ORACLE_TOL,
    ));
    checks.push(CheckResult::new(
        "dephased_closed_form_vs_density_matrix",
        dense,
        ORACLE_TOL,
    ));

    if max_n >= 4 {
        let q = find_k_star(Mode::Quantum, 4, 0.5, 100)?;
        let k_dev = match q.k_star {
            Some(k) => (k as f64 - 1.0).abs() + (q.probability_at_k_star - 1.0).abs(),
            None => f64::INFINITY,
        };
        checks.push(CheckResult::new("four_elements_quantum_kstar", k_dev, 1e-12));
        let g = GroverGeometry::new(4)?;
        let recurred = dephased::classical_step(&dephased::dephase_initial(&g), &g).c;
        let routes = [
            recurred,
            dephased::closed_form_c(&g, 1),
            oracle::evolve_dephased_full(4, 0, 1)?,
        ];
        let worst = routes.iter().map(|c| (c - 0.625).abs()).fold(0.0, f64::max);
        checks.push(CheckResult::new("four_elements_dephased_c1", worst, 1e-12));
    }

    // Analog model.
    let mut stepwise = 0.0f64;
    let mut markov = 0.0f64;
    for &n in &sizes {
        let p = AnalogParams::for_problem_size(n as u64, 1.0)?;
        let k_peak = (std::f64::consts::FRAC_PI_2 / p.step_angle()).ceil() as u64;
        let u = p.step_unitary();
        let mut psi = analog::evolve_exact(&p, 0.0);
        let mut w = analog::AnalogWeights::initial(&p);
        for k in 0..=(2 * k_peak) {
            let exact = analog::evolve_exact(&p, k as f64 * p.dt());
            stepwise = stepwise.max((psi.0 - exact.0).norm()).max((psi.1 - exact.1).norm());
            psi = (u[0][0] * psi.0 + u[0][1] * psi.1, u[1][0] * psi.0 + u[1][1] * psi.1);
            markov = markov.max((w.w - analog::analog_closed_form_w(&p, k)).abs());
            w = analog::analog_classical_step(&w, &p);
        }
    }
    checks.push(CheckResult::new("analog_stepwise_vs_exact", stepwise, ORACLE_TOL));
    checks.push(CheckResult::new(
        "analog_dephased_closed_form_vs_recurrence",
        markov,
        ORACLE_TOL,
    ));

    // Small-angle expansions, as ratios to their error bounds.
    let mut coherent_ratio = 0.0f64;
    for n in [256u64, 1024, 1 << 16] {
        let p = AnalogParams::for_problem_size(n, 1.0)?;
        let mut k = 1u64;
        while k as f64 * p.step_angle() <= 0.3 {
            let phi = k as f64 * p.step_angle();
            let err = analog::coherent_success(&p, k as f64 * p.dt()) - analog::linearized_coherent_success(&p, k);
            coherent_ratio = coherent_ratio.max(err.abs() / phi.powi(3));
            k += 1;
        }
    }
    checks.push(CheckResult::new(
        "analog_coherent_linearization_third_order",
        coherent_ratio,
        1.0,
    ));

    let mut transfer_ratio = 0.0f64;
    for x in [1e-3, 0.01, 0.1, 0.5] {
        for step in 1..=100 {
            let angle = 0.1 * step as f64 / 100.0;
            let p = AnalogParams::new(x, 1.0, angle / x)?;
            let err = analog::dephased_transfer(&p) - analog::leading_order_transfer(&p);
            transfer_ratio = transfer_ratio.max(err.abs() / angle.powi(4));
        }
    }
    checks.push(CheckResult::new("analog_transfer_leading_order", transfer_ratio, 1.0));

    // Entanglement exceptions.
    let max_qubits = (max_n as f64).log2().floor() as usize;
    let mut mismatches = 0usize;
    for n_qubits in 2..=max_qubits.min(6) {
        mismatches += oracle::entanglement_scan(n_qubits, DEFAULT_ENTANGLEMENT_TOL)?
            .iter()
            .filter(|e| !e.consistent())
            .count();
    }
    checks.push(CheckResult::new("entanglement_exception_scan", mismatches as f64, 0.0));

    Ok(ValidationReport { max_n, checks })
}
