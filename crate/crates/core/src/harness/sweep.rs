//! First threshold crossing `k*` per problem size.

use rayon::prelude::*;
use serde::Serialize;

use super::config::{Mode, SweepConfig};
use crate::analog::{self, AnalogParams, AnalogWeights};
use crate::dephased::{self, DephasedWeights};
use crate::error::{Error, Result};
use crate::grover::{self, GroverGeometry};

/// `EΔt` used by the analog modes.
pub const ANALOG_ENERGY_DT: f64 = 1.0;

/// Every `VERIFY_STRIDE`-th sweep point is replayed step by step.
pub const VERIFY_STRIDE: usize = 10;

const VERIFY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub n_elements: u64,
    /// `None` when the threshold was not reached within `max_steps`.
    pub k_star: Option<u64>,
    /// Probability at `k_star`, or at `max_steps` when not reached.
    pub probability_at_k_star: f64,
    pub steps_evaluated: u64,
}

/// Closed-form success probability of `mode` after `k` steps.
pub fn mode_probability(mode: Mode, n_elements: u64, k: u64) -> Result<f64> {
    Ok(Model::new(mode, n_elements)?.probability(k))
}

enum Model {
    Quantum(GroverGeometry),
    Classical(GroverGeometry),
    AnalogCoherent(AnalogParams),
    AnalogDephased(AnalogParams),
}

impl Model {
    fn new(mode: Mode, n: u64) -> Result<Self> {
        Ok(match mode {
            Mode::Quantum => Model::Quantum(GroverGeometry::new(n)?),
            Mode::Classical => Model::Classical(GroverGeometry::new(n)?),
            Mode::AnalogCoherent => Model::AnalogCoherent(analog_params(n)?),
            Mode::AnalogDephased => Model::AnalogDephased(analog_params(n)?),
        })
    }

    fn probability(&self, k: u64) -> f64 {
        match self {
            Model::Quantum(g) => grover::success_probability(g, k),
            Model::Classical(g) => dephased::closed_form_c(g, k),
            Model::AnalogCoherent(p) => analog::coherent_success(p, k as f64 * p.dt()),
            Model::AnalogDephased(p) => analog::analog_closed_form_w(p, k),
        }
    }

    /// Lower bound on `k*` from inverting the first rising arc, for the
    /// coherent modes.
    fn coherent_estimate(&self, threshold: f64) -> Option<u64> {
        let (arc, rate) = match self {
            Model::Quantum(g) => {
                // sin((2k+1)θ) ≥ √t
                let arc = threshold.sqrt().asin() / g.theta();
                ((arc - 1.0) / 2.0, 1.0)
            }
            Model::AnalogCoherent(p) => {
                // sin²φ + x²cos²φ ≥ t  ⇔  sin²φ ≥ (t − x²)/(1 − x²)
                let x2 = p.x() * p.x();
                if x2 >= 1.0 {
                    return Some(0);
                }
                let u = ((threshold - x2) / (1.0 - x2)).clamp(0.0, 1.0);
                (u.sqrt().asin(), p.step_angle())
            }
            _ => return None,
        };
        let k = (arc / rate).ceil();
        Some(if k.is_finite() && k > 0.0 { k as u64 } else { 0 })
    }

    /// Whether the dephased population increases monotonically from the
    /// initial condition.
    fn dephased_monotone(&self) -> bool {
        match self {
            Model::Classical(g) => dephased::cos_four_theta(g) >= 0.0,
            Model::AnalogDephased(p) => 1.0 - 2.0 * analog::dephased_transfer(p) >= 0.0,
            _ => false,
        }
    }
}

fn analog_params(n: u64) -> Result<AnalogParams> {
    AnalogParams::for_problem_size(n, ANALOG_ENERGY_DT)
}

struct Counter<'a> {
    model: &'a Model,
    evaluated: u64,
}

impl Counter<'_> {
    fn p(&mut self, k: u64) -> f64 {
        self.evaluated += 1;
        self.model.probability(k)
    }
}

/// Smallest `k` in `0..=max_steps` with success probability at least `threshold`.
pub fn find_k_star(mode: Mode, n_elements: u64, threshold: f64, max_steps: u64) -> Result<SweepPoint> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::Config(format!("threshold {threshold} must lie in (0, 1]")));
    }
    let model = Model::new(mode, n_elements)?;
    let mut eval = Counter {
        model: &model,
        evaluated: 0,
    };

    let found = if let Some(estimate) = model.coherent_estimate(threshold) {
        search_from_estimate(&mut eval, estimate, threshold, max_steps)
    } else if model.dephased_monotone() {
        binary_search(&mut eval, threshold, max_steps)
    } else {
        linear_scan(&mut eval, 0, threshold, max_steps)
    };

    let point = match found {
        Some((k, p)) => SweepPoint {
            n_elements,
            k_star: Some(k),
            probability_at_k_star: p,
            steps_evaluated: eval.evaluated,
        },
        None => {
            let p = eval.p(max_steps);
            SweepPoint {
                n_elements,
                k_star: None,
                probability_at_k_star: p,
                steps_evaluated: eval.evaluated,
            }
        }
    };
    Ok(point)
}

fn search_from_estimate(eval: &mut Counter, estimate: u64, threshold: f64, max_steps: u64) -> Option<(u64, f64)> {
    if estimate > max_steps {
        return None;
    }
    let mut k = estimate;
    let mut p = eval.p(k);
    if p >= threshold {
        // The estimate can overshoot by rounding; step back while still above.
        while k > 0 {
            let prev = eval.p(k - 1);
            if prev < threshold {
                break;
            }
            k -= 1;
            p = prev;
        }
        return Some((k, p));
    }
    // Rounding in the inversion can land one step short.
    if k < max_steps {
        let next = eval.p(k + 1);
        if next >= threshold {
            return Some((k + 1, next));
        }
    }
    // Short of the threshold at the first peak: look further.
    linear_scan(eval, 0, threshold, max_steps)
}

fn binary_search(eval: &mut Counter, threshold: f64, max_steps: u64) -> Option<(u64, f64)> {
    let first = eval.p(0);
    if first >= threshold {
        return Some((0, first));
    }
    let last = eval.p(max_steps);
    if last < threshold {
        return None;
    }
    // p(lo) < threshold <= p(hi)
    let (mut lo, mut hi, mut p_hi) = (0u64, max_steps, last);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let p = eval.p(mid);
        if p >= threshold {
            hi = mid;
            p_hi = p;
        } else {
            lo = mid;
        }
    }
    Some((hi, p_hi))
}

fn linear_scan(eval: &mut Counter, start: u64, threshold: f64, max_steps: u64) -> Option<(u64, f64)> {
    (start..=max_steps).find_map(|k| {
        let p = eval.p(k);
        (p >= threshold).then_some((k, p))
    })
}

/// Replays the dynamics one step at a time and checks that `point.k_star`
/// is the first crossing.
pub fn verify_point(mode: Mode, threshold: f64, point: &SweepPoint) -> Result<()> {
    let Some(k_star) = point.k_star else {
        return Ok(());
    };
    let n = point.n_elements;
    let fail = |detail: String| Err(Error::Verification { n, detail });
    let trajectory = stepwise_trajectory(mode, n, k_star)?;
    if let Some((k, p)) = trajectory[..k_star as usize]
        .iter()
        .enumerate()
        .find(|(_, &p)| p >= threshold + VERIFY_SLACK)
    {
        return fail(format!(
            "step-by-step probability {p} already meets {threshold} at k = {k} < {k_star}"
        ));
    }
    let p = trajectory[k_star as usize];
    if p < threshold - VERIFY_SLACK {
        return fail(format!(
            "step-by-step probability {p} at k* = {k_star} is below {threshold}"
        ));
    }
    Ok(())
}

/// Success probability for `k = 0..=k_max` obtained by applying one step at a time.
pub fn stepwise_trajectory(mode: Mode, n: u64, k_max: u64) -> Result<Vec<f64>> {
    let len = k_max as usize + 1;
    let out = match Model::new(mode, n)? {
        Model::Quantum(g) => {
            std::iter::successors(Some(grover::initial_plus(&g)), |s| Some(grover::apply_vu(s, &g, 1)))
                .take(len)
                .map(|s| s.probability_a())
                .collect()
        }
        Model::Classical(g) => std::iter::successors(Some(dephased::dephase_initial(&g)), |w: &DephasedWeights| {
            Some(dephased::classical_step(w, &g))
        })
        .take(len)
        .map(|w| w.c)
        .collect(),
        Model::AnalogCoherent(p) => {
            let u = p.step_unitary();
            let (w0, r0) = analog::evolve_exact(&p, 0.0);
            std::iter::successors(Some((w0, r0)), |&(w, r)| {
                Some((u[0][0] * w + u[0][1] * r, u[1][0] * w + u[1][1] * r))
            })
            .take(len)
            .map(|(w, _)| w.norm_sqr())
            .collect()
        }
        Model::AnalogDephased(p) => std::iter::successors(Some(AnalogWeights::initial(&p)), |w| {
            Some(analog::analog_classical_step(w, &p))
        })
        .take(len)
        .map(|w| w.w)
        .collect(),
    };
    Ok(out)
}

/// One point per size in ascending `N`, re-verifying every tenth point.
pub fn run_sweep(config: &SweepConfig, parallel: bool) -> Result<Vec<SweepPoint>> {
    config.validate()?;
    let evaluate = |(i, &n): (usize, &u64)| -> Result<SweepPoint> {
        let point = find_k_star(config.mode, n, config.threshold, config.max_steps)?;
        if i % VERIFY_STRIDE == 0 {
            verify_point(config.mode, config.threshold, &point)?;
        }
        Ok(point)
    };
    let mut points = if parallel {
        config
            .sizes
            .par_iter()
            .enumerate()
            .map(evaluate)
            .collect::<Result<Vec<_>>>()?
    } else {
        config
            .sizes
            .iter()
            .enumerate()
            .map(evaluate)
            .collect::<Result<Vec<_>>>()?
    };
    points.sort_by_key(|p| p.n_elements);
    Ok(points)
}
