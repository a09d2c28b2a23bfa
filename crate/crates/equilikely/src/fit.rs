//! Log-log least-squares fitting of power laws `y ~ n^exponent`.
//!
//! Base-10 logarithms are used on both axes; the exponent is base-independent
//! but `log_amplitude` is the intercept in log10 space.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FitError {
    #[error("need at least 2 points with y > 0 and positive n, got {usable}")]
    InsufficientData { usable: usize },
    #[error("all points share the same abscissa n = {n}")]
    DegenerateAbscissa { n: u64 },
}

/// Result of an ordinary least-squares fit on `(log10 n, log10 y)`.
///
/// `exponent_se` is the conventional slope standard error
/// `s / sqrt(sum((x - mean x)^2))` with `s^2 = SSR / (m - 2)`; it is zero for
/// two-point fits and for exact data. Points with `y == 0` cannot enter a log
/// fit and are counted in `dropped_points` instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub log_amplitude: f64,
    pub exponent_se: f64,
    pub r_squared: f64,
    pub n_points: usize,
    pub dropped_points: usize,
}

/// Fit `y = c * n^p` by OLS on the base-10 log-log transform.
pub fn fit_power_law(points: &[(u64, f64)]) -> Result<PowerLawFit, FitError> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(n, y)| n > 0 && y > 0.0)
        .map(|&(n, y)| ((n as f64).log10(), y.log10()))
        .collect();
    let dropped = points.len() - usable.len();

    let m = usable.len();
    if m < 2 {
        return Err(FitError::InsufficientData { usable: m });
    }
    let x_mean = usable.iter().map(|p| p.0).sum::<f64>() / m as f64;
    let y_mean = usable.iter().map(|p| p.1).sum::<f64>() / m as f64;
    let sxx: f64 = usable.iter().map(|p| (p.0 - x_mean).powi(2)).sum();
    if sxx == 0.0 {
        let n = points.iter().find(|&&(n, y)| n > 0 && y > 0.0).unwrap().0;
        return Err(FitError::DegenerateAbscissa { n });
    }
    let sxy: f64 = usable
        .iter()
        .map(|p| (p.0 - x_mean) * (p.1 - y_mean))
        .sum();

    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;

    let ssr: f64 = usable
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    let sst: f64 = usable.iter().map(|p| (p.1 - y_mean).powi(2)).sum();

    let exponent_se = if m > 2 {
        (ssr / (m - 2) as f64).sqrt() / sxx.sqrt()
    } else {
        0.0
    };
    // constant y fits exactly; otherwise 1 - SSR/SST, clamped against
    // last-ulp excursions
    let r_squared = if sst == 0.0 {
        1.0
    } else {
        (1.0 - ssr / sst).clamp(0.0, 1.0)
    };

    Ok(PowerLawFit {
        exponent: slope,
        log_amplitude: intercept,
        exponent_se,
        r_squared,
        n_points: m,
        dropped_points: dropped,
    })
}

/// Fit over the points with `n >= min_n`, falling back to the full point set
/// when the window leaves fewer than two usable points.
///
/// Returns the fit together with the window lower bound actually applied
/// (0 when the fallback disabled the window).
pub fn fit_power_law_windowed(
    points: &[(u64, f64)],
    min_n: u64,
) -> Result<(PowerLawFit, u64), FitError> {
    let windowed: Vec<(u64, f64)> = points.iter().copied().filter(|&(n, _)| n >= min_n).collect();
    let usable = windowed.iter().filter(|&&(n, y)| n > 0 && y > 0.0).count();
    if usable >= 2 {
        Ok((fit_power_law(&windowed)?, min_n))
    } else {
        Ok((fit_power_law(points)?, 0))
    }
}

/// `beta = alpha - 1`: the relative-range exponent implied by a range fit.
pub fn beta_from_alpha(alpha_fit: &PowerLawFit) -> f64 {
    alpha_fit.exponent - 1.0
}
