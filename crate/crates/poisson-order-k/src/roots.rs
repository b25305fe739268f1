//! Characteristic lambda thresholds of the order-k pmf.
//!
//! Three values are solved per order: r_k and t_k, where the scaled pmf at
//! n = k crosses 1 and 2, and lambda_{k+1,k+2}, the positive root of
//! p_{k+2} - p_{k+1} = 0 — the conjectured supremum for strict decrease of
//! the pmf on n >= k. The analytic bounds 4/(k+1) (necessary) and 9/(4k-1)
//! (sufficient) come along for the ride; the former doubles as the root
//! bracket's high end.

use crate::error::{Error, Result};
use crate::pmf::scaled_pmf_at_order;

/// Default iteration limit for the bracketed solver.
pub const DEFAULT_MAX_ITERATIONS: u32 = 200;

/// Solved thresholds and analytic bounds for one order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdSet {
    pub k: u32,
    /// lambda with h_k(k; lambda) = 1.
    pub r_k: f64,
    /// lambda with h_k(k; lambda) = 2.
    pub t_k: f64,
    /// positive root of p_{k+2} - p_{k+1} = 0.
    pub lambda_k1k2: f64,
    /// 4/(k+1), necessary upper bound on the decrease supremum.
    pub bound_necessary: f64,
    /// 9/(4k-1), conjectured sufficient bound.
    pub bound_sufficient: f64,
}

/// p_{k+2} - p_{k+1} evaluated from one shared recurrence pass, so the two
/// entries see identical rounding.
pub fn boundary_gap(k: u32, lambda: f64) -> f64 {
    let k = k as usize;
    let n_max = k + 2;
    let mut p = vec![0.0; n_max + 1];
    p[0] = 1.0;
    for n in 1..=n_max {
        let jmax = n.min(k);
        let mut acc = 0.0;
        for j in 1..=jmax {
            acc += j as f64 * p[n - j];
        }
        p[n] = lambda * acc / n as f64;
    }
    p[k + 2] - p[k + 1]
}

/// Finds the root of a sign-changing function on [lo, hi] by bisection with
/// secant acceleration on alternate steps. Deterministic; the result is the
/// midpoint of the final bracket, whose relative width is at most `rel_tol`.
pub fn solve_monotone_root<F>(f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    solve_monotone_root_with(f, lo, hi, rel_tol, DEFAULT_MAX_ITERATIONS)
}

pub fn solve_monotone_root_with<F>(
    f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    max_iter: u32,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if rel_tol <= 0.0 || !rel_tol.is_finite() {
        return Err(Error::InvalidTolerance(rel_tol));
    }
    let flo = f(lo);
    if flo == 0.0 {
        return Ok(lo);
    }
    let fhi = f(hi);
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return Err(Error::NoSignChange { lo, hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    let (mut flo, mut fhi) = (flo, fhi);
    for iter in 0..max_iter {
        if hi - lo <= rel_tol * lo.abs().max(hi.abs()) {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // bracket endpoints are adjacent floats
            return Ok(mid);
        }
        let x = if iter % 2 == 1 {
            let s = (lo * fhi - hi * flo) / (fhi - flo);
            if s.is_finite() && s > lo && s < hi {
                s
            } else {
                mid
            }
        } else {
            mid
        };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx > 0.0) == (fhi > 0.0) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
    }
    Err(Error::MaxIterations { limit: max_iter })
}

/// Solves all three thresholds for an order. r_k and t_k come from the
/// strictly increasing polynomial h_k(k; lambda); lambda_{k+1,k+2} from
/// the gap p_{k+2} - p_{k+1}, bracketed in (1e-9, 4/(k+1)] and widened by
/// doubling in the (never yet observed) case the gap is still negative at
/// the necessary bound.
pub fn threshold_set(k: u32, rel_tol: f64) -> Result<ThresholdSet> {
    if k < 2 {
        return Err(Error::OrderTooSmall { got: k, min: 2 });
    }
    if rel_tol <= 0.0 || !rel_tol.is_finite() {
        return Err(Error::InvalidTolerance(rel_tol));
    }
    let r_k = solve_monotone_root(|l| scaled_pmf_at_order(k, l) - 1.0, 0.0, 2.0, rel_tol)?;
    let t_k = solve_monotone_root(|l| scaled_pmf_at_order(k, l) - 2.0, 0.0, 3.0, rel_tol)?;

    let bound_necessary = 4.0 / (k as f64 + 1.0);
    let mut hi = bound_necessary;
    let mut widenings = 0;
    while boundary_gap(k, hi) <= 0.0 {
        hi *= 2.0;
        widenings += 1;
        if widenings > 64 {
            return Err(Error::BracketFailure { k });
        }
    }
    let lambda_k1k2 = solve_monotone_root(|l| boundary_gap(k, l), 1e-9, hi, rel_tol)?;

    Ok(ThresholdSet {
        k,
        r_k,
        t_k,
        lambda_k1k2,
        bound_necessary,
        bound_sufficient: 9.0 / (4.0 * k as f64 - 1.0),
    })
}

/// Scans the gap p_{k+2} - p_{k+1} on a log-spaced lambda grid spanning
/// (1e-6 B, 10 B] with B = 4/(k+1) and reports whether exactly one sign
/// change is seen — the uniqueness premise behind the threshold definition.
pub fn verify_uniqueness(k: u32, grid: u32) -> Result<bool> {
    if k < 2 {
        return Err(Error::OrderTooSmall { got: k, min: 2 });
    }
    if grid < 100 {
        return Err(Error::GridTooSmall {
            got: grid,
            min: 100,
        });
    }
    let b = 4.0 / (k as f64 + 1.0);
    let mut changes = 0u32;
    let mut prev = boundary_gap(k, b * 1e-6);
    for i in 1..grid {
        let exponent = -6.0 + 7.0 * i as f64 / (grid - 1) as f64;
        let g = boundary_gap(k, b * 10f64.powf(exponent));
        if prev == 0.0 || g * prev < 0.0 {
            changes += 1;
        }
        prev = g;
    }
    Ok(changes == 1)
}
