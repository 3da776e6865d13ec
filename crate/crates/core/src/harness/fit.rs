//! Least-squares power-law fits `k* ∝ N^slope` in log-log space.

use serde::Serialize;

use super::sweep::SweepPoint;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Points used in the fit.
    pub n_points: usize,
    /// Points dropped because `k*` was missing or zero.
    pub excluded: usize,
}

/// Fits `ln k* = slope · ln N + intercept` over points with a defined `k* ≥ 1`.
pub fn fit_scaling(points: &[SweepPoint]) -> Result<FitResult> {
    let (usable, excluded): (Vec<_>, Vec<_>) = points.iter().partition(|p| matches!(p.k_star, Some(k) if k >= 1));
    let xs: Vec<f64> = usable.iter().map(|p| (p.n_elements as f64).ln()).collect();
    let ys: Vec<f64> = usable.iter().map(|p| (p.k_star.unwrap() as f64).ln()).collect();
    let mut fit = fit_line(&xs, &ys).map_err(|_| Error::TooFewPoints {
        usable: usable.len(),
        excluded: excluded.len(),
    })?;
    fit.excluded = excluded.len();
    Ok(fit)
}

/// Ordinary least squares `y = slope·x + intercept`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<FitResult> {
    let n = xs.len();
    if n < 3 || ys.len() != n {
        return Err(Error::TooFewPoints {
            usable: n.min(ys.len()),
            excluded: 0,
        });
    }
    let nf = n as f64;
    let mean_x = xs.iter().sum::<f64>() / nf;
    let mean_y = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let syy: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::TooFewPoints {
            usable: 1,
            excluded: n - 1,
        });
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
        n_points: n,
        excluded: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn point(n: u64, k: Option<u64>) -> SweepPoint {
        SweepPoint {
            n_elements: n,
            k_star: k,
            probability_at_k_star: 0.0,
            steps_evaluated: 0,
        }
    }

    #[test]
    fn exact_power_law() {
        let pts: Vec<_> = (4..12).map(|e| point(1 << e, Some(1 << e))).collect();
        let fit = fit_scaling(&pts).unwrap();
        assert_abs_diff_eq!(fit.slope, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.intercept, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.r_squared, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rounded_square_root() {
        let pts: Vec<_> = (8..=16)
            .map(|e| {
                let n = 1u64 << e;
                point(n, Some((n as f64).sqrt().round() as u64))
            })
            .collect();
        assert!((fit_scaling(&pts).unwrap().slope - 0.5).abs() < 0.02);
    }

    #[test]
    fn excludes_unusable_points() {
        let pts = vec![
            point(2, Some(0)),
            point(4, None),
            point(8, Some(2)),
            point(16, Some(4)),
            point(32, Some(8)),
        ];
        let fit = fit_scaling(&pts).unwrap();
        assert_eq!(fit.excluded, 2);
        assert_eq!(fit.n_points, 3);
        assert_abs_diff_eq!(fit.slope, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn too_few_points() {
        let pts = vec![point(4, Some(1)), point(16, Some(2))];
        assert!(matches!(fit_scaling(&pts), Err(Error::TooFewPoints { usable: 2, .. })));
        let pts = vec![
            point(4, Some(0)),
            point(16, Some(2)),
            point(64, Some(3)),
            point(128, None),
        ];
        assert!(matches!(
            fit_scaling(&pts),
            Err(Error::TooFewPoints { usable: 2, excluded: 2 })
        ));
    }
}
