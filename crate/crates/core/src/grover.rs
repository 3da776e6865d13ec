//! Coherent Grover dynamics restricted to the invariant plane spanned by the
//! marked state `|a⟩` and the uniform superposition `|b⟩` of the unmarked
//! states.
//!
//! One Grover iteration `VU` is a real rotation by `2θ` in that plane, with
//! `sin θ = 1/√N`. Everything here is closed form.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Problem size `N` and the Grover angle `θ = arcsin(1/√N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverGeometry {
    n_elements: u64,
    theta: f64,
    sin_theta: f64,
    cos_theta: f64,
}

impl GroverGeometry {
    pub fn new(n_elements: u64) -> Result<Self> {
        if n_elements < 2 {
            return Err(Error::InvalidSize {
                min: 2,
                got: n_elements,
            });
        }
        let n = n_elements as f64;
        let sin_theta = n.sqrt().recip();
        let cos_theta = ((n - 1.0) / n).sqrt();
        Ok(Self {
            n_elements,
            theta: sin_theta.asin(),
            sin_theta,
            cos_theta,
        })
    }

    pub fn n_elements(&self) -> u64 {
        self.n_elements
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `sin θ = ⟨a|+⟩ = 1/√N`.
    pub fn sin_theta(&self) -> f64 {
        self.sin_theta
    }

    /// `cos θ = ⟨b|+⟩ = √((N-1)/N)`.
    pub fn cos_theta(&self) -> f64 {
        self.cos_theta
    }

    /// `sin²2θ = 4 sin²θ cos²θ`, the per-iteration transfer probability once
    /// coherence between `|a⟩` and `|b⟩` is destroyed.
    pub fn sin_sq_two_theta(&self) -> f64 {
        let n = self.n_elements as f64;
        4.0 * (n - 1.0) / (n * n)
    }

    /// `(sin mθ, cos mθ)` evaluated on the exact product `m·θ`.
    pub fn multiple_angle(&self, m: u64) -> (f64, f64) {
        sin_cos_of_product(m, self.theta)
    }
}

/// Sine and cosine of `m·theta`, correcting for the rounding of the product.
///
/// For small `N` and large `m` the product is large enough that its rounding
/// error is visible in `sin²`; the error-free product term restores it.
pub(crate) fn sin_cos_of_product(m: u64, theta: f64) -> (f64, f64) {
    let m = m as f64;
    let hi = m * theta;
    let lo = m.mul_add(theta, -hi);
    let (s, c) = hi.sin_cos();
    (s + c * lo, c - s * lo)
}

pub fn make_geometry(n_elements: u64) -> Result<GroverGeometry> {
    GroverGeometry::new(n_elements)
}

/// Amplitude pair on the `{|a⟩, |b⟩}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelState {
    pub amp_a: Complex64,
    pub amp_b: Complex64,
}

impl TwoLevelState {
    pub fn new(amp_a: Complex64, amp_b: Complex64) -> Self {
        Self { amp_a, amp_b }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp_a.norm_sqr() + self.amp_b.norm_sqr()
    }

    /// Born probability of the marked state.
    pub fn probability_a(&self) -> f64 {
        self.amp_a.norm_sqr()
    }

    pub fn probability_b(&self) -> f64 {
        self.amp_b.norm_sqr()
    }
}

/// `|+⟩ = sin θ |a⟩ + cos θ |b⟩`.
pub fn initial_plus(geometry: &GroverGeometry) -> TwoLevelState {
    TwoLevelState::new(
        Complex64::new(geometry.sin_theta, 0.0),
        Complex64::new(geometry.cos_theta, 0.0),
    )
}

/// `|−⟩ = cos θ |a⟩ − sin θ |b⟩`, orthogonal to `|+⟩`.
pub fn initial_minus(geometry: &GroverGeometry) -> TwoLevelState {
    TwoLevelState::new(
        Complex64::new(geometry.cos_theta, 0.0),
        Complex64::new(-geometry.sin_theta, 0.0),
    )
}

/// Applies `(VU)^k`, a rotation by `2kθ` taking `|b⟩` towards `|a⟩`.
pub fn apply_vu(state: &TwoLevelState, geometry: &GroverGeometry, k: u64) -> TwoLevelState {
    let (s, c) = geometry.multiple_angle(2 * k);
    TwoLevelState {
        amp_a: state.amp_a * c + state.amp_b * s,
        amp_b: state.amp_b * c - state.amp_a * s,
    }
}

/// `sin²((2k+1)θ)`: probability of measuring `|a⟩` after `k` iterations
/// starting from `|+⟩`.
pub fn success_probability(geometry: &GroverGeometry, k: u64) -> f64 {
    let (s, _) = geometry.multiple_angle(2 * k + 1);
    s * s
}

/// Values closer than this are treated as ties by [`optimal_k`].
const TIE_TOLERANCE: f64 = 1e-12;

/// Iteration count of the first amplification peak, near `π/(4θ) − 1/2`.
///
/// The rounded estimate is compared with its neighbours and moved to a
/// strictly better one; ties go to the smaller `k`. Later peaks of the
/// quasi-periodic sequence are not considered.
pub fn optimal_k(geometry: &GroverGeometry) -> u64 {
    let estimate = (std::f64::consts::PI / (4.0 * geometry.theta) - 0.5).round();
    let mut best = estimate.max(0.0) as u64;
    loop {
        let here = success_probability(geometry, best);
        let up = success_probability(geometry, best + 1);
        if up > here + TIE_TOLERANCE {
            best += 1;
            continue;
        }
        if best > 0 && success_probability(geometry, best - 1) >= here - TIE_TOLERANCE {
            best -= 1;
            continue;
        }
        return best;
    }
}

/// Probability `1/N` of identifying the marked element from a single
/// ancilla-assisted query on the uniform superposition.
pub fn single_query_success(n_elements: u64) -> Result<f64> {
    if n_elements < 1 {
        return Err(Error::InvalidSize {
            min: 1,
            got: n_elements,
        });
    }
    Ok(1.0 / n_elements as f64)
}
