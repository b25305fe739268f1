//! Threshold sweeps over k, the straight-line fit to 1/lambda_{k+1,k+2},
//! and the sufficient-bound scan.
//!
//! The inverse threshold closely follows a straight line in k; the sweep
//! reproduces the published table rows and the fit coefficients land near
//! 4/9 and -1/9. Root solves for different orders are independent, so the
//! sweep runs them in parallel and reassembles in k order, making the
//! output identical regardless of worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::roots::{threshold_set, ThresholdSet};
use crate::structure::structure_report;

/// One [`ThresholdSet`] per order in [k_min, k_max], ordered by k.
pub fn sweep(k_min: u32, k_max: u32, rel_tol: f64) -> Result<Vec<ThresholdSet>> {
    if k_min < 2 || k_min > k_max {
        return Err(Error::InvalidRange { k_min, k_max });
    }
    (k_min..=k_max)
        .into_par_iter()
        .map(|k| {
            threshold_set(k, rel_tol).map_err(|e| Error::SolveAt {
                k,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Orders for a thinned sweep: every k up to 200, then a log-spaced subset.
/// Table-reproduction checks always use exact requested orders; thinning is
/// only for fitting, where range matters more than density.
pub fn thinned_orders(k_min: u32, k_max: u32) -> Vec<u32> {
    const DENSE_LIMIT: u32 = 200;
    let mut ks: Vec<u32> = (k_min..=k_max.min(DENSE_LIMIT)).collect();
    if k_max > DENSE_LIMIT {
        let lo = (DENSE_LIMIT.max(k_min) as f64).ln();
        let hi = (k_max as f64).ln();
        let steps = 200;
        for i in 1..=steps {
            let k = (lo + (hi - lo) * i as f64 / steps as f64).exp().round() as u32;
            ks.push(k.clamp(k_min, k_max));
        }
        ks.sort_unstable();
        ks.dedup();
    }
    ks
}

/// Thresholds for an explicit list of orders, ordered as given.
pub fn sweep_orders(ks: &[u32], rel_tol: f64) -> Result<Vec<ThresholdSet>> {
    ks.par_iter()
        .map(|&k| {
            threshold_set(k, rel_tol).map_err(|e| Error::SolveAt {
                k,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Ordinary least squares fit of 1/lambda_{k+1,k+2} against k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    /// Slope per unit k.
    pub alpha: f64,
    /// Intercept.
    pub beta: f64,
    /// Largest signed residual (alpha k + beta) - 1/lambda.
    pub max_residual: f64,
    /// Smallest signed residual.
    pub min_residual: f64,
    pub k_range: (u32, u32),
}

/// Fits y = 1/lambda_{k+1,k+2} to a straight line alpha k + beta by ordinary
/// least squares and reports the extremal signed residuals — the interesting
/// claim is that they straddle zero.
pub fn fit_inverse_root(data: &[(u32, f64)]) -> Result<FitResult> {
    if data.len() < 3 {
        return Err(Error::DegenerateFit("need at least 3 data points"));
    }
    if data.iter().any(|&(_, l)| l <= 0.0 || l.is_nan()) {
        return Err(Error::DegenerateFit("lambda values must be positive"));
    }
    let n = data.len() as f64;
    let x_mean = data.iter().map(|&(k, _)| k as f64).sum::<f64>() / n;
    let y_mean = data.iter().map(|&(_, l)| 1.0 / l).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(k, l) in data {
        let dx = k as f64 - x_mean;
        sxx += dx * dx;
        sxy += dx * (1.0 / l - y_mean);
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("k values are all equal"));
    }
    let alpha = sxy / sxx;
    let beta = y_mean - alpha * x_mean;

    let mut max_residual = f64::NEG_INFINITY;
    let mut min_residual = f64::INFINITY;
    let mut k_lo = u32::MAX;
    let mut k_hi = 0;
    for &(k, l) in data {
        let r = alpha * k as f64 + beta - 1.0 / l;
        max_residual = max_residual.max(r);
        min_residual = min_residual.min(r);
        k_lo = k_lo.min(k);
        k_hi = k_hi.max(k);
    }
    Ok(FitResult {
        alpha,
        beta,
        max_residual,
        min_residual,
        k_range: (k_lo, k_hi),
    })
}

/// One order's outcome in the sufficient-bound scan.
#[derive(Debug, Clone, Copy)]
pub struct BoundScanEntry {
    pub k: u32,
    /// 9/(4k-1) shaved by 1e-9: the pmf must decrease on the whole tail here.
    pub lambda_low: f64,
    pub decreasing_at_low: bool,
    /// 9.05/(4k-1): known to be past the supremum for every tested order.
    pub lambda_high: f64,
    pub violation_at_high: bool,
}

impl BoundScanEntry {
    pub fn passed(&self) -> bool {
        self.decreasing_at_low && self.violation_at_high
    }
}

/// Per-k probe of the conjectured sufficient bound 9/(4k-1): just below it
/// the pmf tail must decrease strictly; at 9.05/(4k-1) a violation must
/// appear. The tail is inspected out to cap_mult * k.
pub fn sufficient_bound_scan(k_min: u32, k_max: u32, cap_mult: u32) -> Result<Vec<BoundScanEntry>> {
    if k_min < 2 || k_min > k_max {
        return Err(Error::InvalidRange { k_min, k_max });
    }
    if cap_mult < 4 {
        return Err(Error::CapMultTooSmall(cap_mult));
    }
    (k_min..=k_max)
        .into_par_iter()
        .map(|k| {
            let denom = 4.0 * k as f64 - 1.0;
            let lambda_low = 9.0 / denom * (1.0 - 1e-9);
            let lambda_high = 9.05 / denom;
            let cap = cap_mult * k;
            let low = structure_report(&Params::new(k, lambda_low)?, cap)?;
            let high = structure_report(&Params::new(k, lambda_high)?, cap)?;
            Ok(BoundScanEntry {
                k,
                lambda_low,
                decreasing_at_low: low.decreasing_to_cap(),
                lambda_high,
                violation_at_high: !high.decreasing_to_cap(),
            })
        })
        .collect()
}
