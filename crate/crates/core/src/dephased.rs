//! Grover amplification with complete dephasing between iterations.
//!
//! Removing the `|a⟩⟨b|` coherences after every `VU` leaves a diagonal state
//! `c|a⟩⟨a| + d|b⟩⟨b|`, and one iteration acts on `(c, d)` as a symmetric
//! two-state Markov chain with transfer probability `sin²2θ`. Its solution is
//!
//! ```text
//! c_k = 1/2 − (1/2 − sin²θ) cos^k(4θ)
//! ```
//!
//! which tends to `½(1 − e^{−8k/N})` for large `N` at fixed `k/N`.

use crate::error::{Error, Result};
use crate::grover::GroverGeometry;

/// Populations of `|a⟩` and `|b⟩` in a fully dephased state.
///
/// Both are stored so that any drift of the trace stays observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasedWeights {
    pub c: f64,
    pub d: f64,
}

impl DephasedWeights {
    pub fn new(c: f64, d: f64) -> Self {
        Self { c, d }
    }

    /// Weights `(c, 1 − c)`.
    pub fn from_c(c: f64) -> Self {
        Self { c, d: 1.0 - c }
    }

    pub fn trace(&self) -> f64 {
        self.c + self.d
    }
}

/// `sin²θ |a⟩⟨a| + cos²θ |b⟩⟨b|`: the dephased image of `|+⟩`.
pub fn dephase_initial(geometry: &GroverGeometry) -> DephasedWeights {
    let c = 1.0 / geometry.n_elements() as f64;
    DephasedWeights { c, d: 1.0 - c }
}

/// One Grover iteration followed by complete dephasing.
pub fn classical_step(w: &DephasedWeights, geometry: &GroverGeometry) -> DephasedWeights {
    let transfer = geometry.sin_sq_two_theta();
    // cos²2θ
    let stay = 1.0 - transfer;
    DephasedWeights {
        c: w.c * stay + w.d * transfer,
        d: w.c * transfer + w.d * stay,
    }
}

/// Applies [`classical_step`] `k` times to `start`.
pub fn iterate_classical(start: DephasedWeights, geometry: &GroverGeometry, k: u64) -> DephasedWeights {
    (0..k).fold(start, |w, _| classical_step(&w, geometry))
}

/// `cos 4θ = 1 − 2 sin²2θ`.
pub fn cos_four_theta(geometry: &GroverGeometry) -> f64 {
    1.0 - 2.0 * geometry.sin_sq_two_theta()
}

/// `(1 − 2·transfer)^k`, accurate for `k` in the millions when the base is
/// close to one.
pub(crate) fn contraction_power(transfer: f64, k: u64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let base = 1.0 - 2.0 * transfer;
    if base == 0.0 {
        return 0.0;
    }
    let log_magnitude = if base > 0.0 {
        (-2.0 * transfer).ln_1p()
    } else {
        (-base).ln()
    };
    let magnitude = (k as f64 * log_magnitude).exp();
    if base < 0.0 && k % 2 == 1 {
        -magnitude
    } else {
        magnitude
    }
}

/// Exact population of `|a⟩` after `k` dephased iterations.
pub fn closed_form_c(geometry: &GroverGeometry, k: u64) -> f64 {
    let c0 = 1.0 / geometry.n_elements() as f64;
    0.5 - (0.5 - c0) * contraction_power(geometry.sin_sq_two_theta(), k)
}

/// Large-`N` limit `½(1 − e^{−8k/N})`.
pub fn asymptotic_c(n_elements: u64, k: u64) -> Result<f64> {
    if n_elements < 2 {
        return Err(Error::InvalidSize {
            min: 2,
            got: n_elements,
        });
    }
    Ok(0.5 * (1.0 - (-8.0 * k as f64 / n_elements as f64).exp()))
}

/// First-order estimate `(1+4k)/N`, only meaningful while it stays below one.
pub fn linearized_probability(n_elements: u64, k: u64) -> Result<f64> {
    if n_elements < 2 {
        return Err(Error::InvalidSize {
            min: 2,
            got: n_elements,
        });
    }
    let value = (1.0 + 4.0 * k as f64) / n_elements as f64;
    if value > 1.0 {
        return Err(Error::OutsideLinearRegime {
            n: n_elements,
            k,
            value,
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grover::{initial_plus, make_geometry};
    use approx::assert_abs_diff_eq;

    fn geom(n: u64) -> GroverGeometry {
        make_geometry(n).unwrap()
    }

    #[test]
    fn initial_examples() {
        let w = dephase_initial(&geom(4));
        assert_abs_diff_eq!(w.c, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(w.d, 0.75, epsilon = 1e-15);
        let w = dephase_initial(&geom(2));
        assert_abs_diff_eq!(w.c, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(w.d, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(dephase_initial(&geom(1_000_000)).c, 1e-6, epsilon = 1e-20);
    }

    #[test]
    fn dephasing_keeps_born_probabilities() {
        for n in [2u64, 5, 64, 12345] {
            let g = geom(n);
            let p = initial_plus(&g);
            let w = dephase_initial(&g);
            assert_abs_diff_eq!(w.c, p.probability_a(), epsilon = 1e-15);
            assert_abs_diff_eq!(w.d, p.probability_b(), epsilon = 1e-15);
        }
    }

    #[test]
    fn step_examples() {
        let g = geom(4);
        let w = classical_step(&DephasedWeights::new(0.25, 0.75), &g);
        assert_abs_diff_eq!(w.c, 0.625, epsilon = 1e-15);
        assert_abs_diff_eq!(w.d, 0.375, epsilon = 1e-15);

        for n in [2u64, 3, 4, 9, 1 << 20] {
            let w = classical_step(&DephasedWeights::new(0.5, 0.5), &geom(n));
            assert_abs_diff_eq!(w.c, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(w.d, 0.5, epsilon = 1e-15);
        }

        let w = classical_step(&DephasedWeights::new(0.3, 0.7), &geom(2));
        assert_abs_diff_eq!(w.c, 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(w.d, 0.3, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        assert_abs_diff_eq!(closed_form_c(&geom(4), 1), 0.625, epsilon = 1e-15);
        for n in [2u64, 4, 7, 1000] {
            assert_abs_diff_eq!(closed_form_c(&geom(n), 0), 1.0 / n as f64, epsilon = 1e-15);
        }
        let n = 1u64 << 16;
        let expected = 0.5 * (1.0 - (-8f64).exp());
        assert!((closed_form_c(&geom(n), n) - expected).abs() < 2e-3);
    }

    #[test]
    fn cos_four_theta_matches_expansion_in_one_over_n() {
        // cos 4θ = 1 − (8/N)(1 − 1/N) exactly, since sin²θ = 1/N.
        for n in [2u64, 3, 8, 1000, 1 << 20] {
            let g = geom(n);
            let nf = n as f64;
            assert_abs_diff_eq!(cos_four_theta(&g), 1.0 - 8.0 / nf * (1.0 - 1.0 / nf), epsilon = 1e-15);
            assert_abs_diff_eq!(cos_four_theta(&g), (4.0 * g.theta()).cos(), epsilon = 1e-14);
        }
    }

    #[test]
    fn first_closed_form_line_agrees() {
        // c_k = cos^k4θ sin²θ + (1 − cos^k4θ)/(1 − cos4θ) sin²2θ
        for n in [5u64, 8, 33, 4096] {
            let g = geom(n);
            let q = cos_four_theta(&g);
            for k in [1u64, 2, 10, 77] {
                let qk = q.powi(k as i32);
                let alt = qk * g.sin_theta().powi(2) + (1.0 - qk) / (1.0 - q) * g.sin_sq_two_theta();
                assert_abs_diff_eq!(closed_form_c(&g, k), alt, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn closed_form_tracks_recurrence() {
        for n in [2u64, 3, 4, 5, 6, 7, 8, 64, 1000] {
            let g = geom(n);
            let mut w = dephase_initial(&g);
            for k in 0..=(4 * n) {
                assert!((w.c - closed_form_c(&g, k)).abs() <= 1e-12, "N = {n}, k = {k}");
                assert!((w.trace() - 1.0).abs() <= 1e-12);
                w = classical_step(&w, &g);
            }
        }
    }

    #[test]
    fn four_elements_oscillate_with_halving_amplitude() {
        let g = geom(4);
        for k in 0..40u64 {
            let c = closed_form_c(&g, k);
            assert_abs_diff_eq!((c - 0.5).abs(), 0.25 * 0.5f64.powi(k as i32), epsilon = 1e-15);
            assert_eq!(c > 0.5, k % 2 == 1);
        }
    }

    #[test]
    fn monotone_below_half_from_eight_elements() {
        for n in [8u64, 9, 64, 1 << 12] {
            let g = geom(n);
            let mut prev = closed_form_c(&g, 0);
            for k in 1..(2 * n) {
                let c = closed_form_c(&g, k);
                assert!(c > prev || (0.5 - c) < 1e-15, "N = {n}, k = {k}");
                assert!(c <= 0.5);
                prev = c;
            }
        }
    }

    #[test]
    fn excess_population_of_a_flows_back() {
        let g = geom(100);
        let mut w = DephasedWeights::from_c(0.9);
        for _ in 0..50 {
            let next = classical_step(&w, &g);
            assert!(next.c < w.c && next.c > 0.5);
            assert!(next.d > w.d);
            w = next;
        }
    }

    #[test]
    fn asymptotic_examples() {
        let n = 1u64 << 20;
        // k/N = ln2/8 lands between integers; check the continuous formula at that point.
        let half_way = (std::f64::consts::LN_2 / 8.0 * n as f64).round() as u64;
        assert_abs_diff_eq!(asymptotic_c(n, half_way).unwrap(), 0.25, epsilon = 1e-5);
        assert_eq!(asymptotic_c(1000, 0).unwrap(), 0.0);
        assert_abs_diff_eq!(asymptotic_c(10, 1_000_000).unwrap(), 0.5, epsilon = 1e-15);
        assert!(asymptotic_c(1, 3).is_err());
    }

    #[test]
    fn linearized_examples() {
        assert_abs_diff_eq!(linearized_probability(1000, 10).unwrap(), 0.041, epsilon = 1e-15);
        assert_abs_diff_eq!(linearized_probability(77, 0).unwrap(), 1.0 / 77.0, epsilon = 1e-15);
        assert!(matches!(
            linearized_probability(100, 25),
            Err(Error::OutsideLinearRegime { .. })
        ));
        assert!(linearized_probability(101, 25).is_ok());

        let n = 1u64 << 16;
        let g = geom(n);
        let bound = 4.0 * (8.0 * 64.0 / n as f64).powi(2);
        assert!((linearized_probability(n, 64).unwrap() - closed_form_c(&g, 64)).abs() < bound);
    }

    #[test]
    fn contraction_power_signs() {
        assert_eq!(contraction_power(1.0, 3), -1.0);
        assert_eq!(contraction_power(1.0, 4), 1.0);
        assert_eq!(contraction_power(0.5, 4), 0.0);
        assert_eq!(contraction_power(0.5, 0), 1.0);
        assert_abs_diff_eq!(contraction_power(0.75, 3), -0.125, epsilon = 1e-16);
        assert_abs_diff_eq!(contraction_power(0.1, 7), 0.8f64.powi(7), epsilon = 1e-15);
    }
}
