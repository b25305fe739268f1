//! Monotone-decrease and concavity structure of the second block
//! n in [k+1, 2k] and of the tail n >= k.
//!
//! For small lambda the block decreases strictly and is concave; past the
//! threshold lambda_{k+1,k+2} a local maximum appears inside it. The report
//! here measures both facts with strict zero-tolerance comparisons and
//! records near-ties separately, since at the root boundary p_{k+1} and
//! p_{k+2} coincide by construction.

use crate::error::{Error, Result};
use crate::params::Params;
use crate::pmf::{pmf_recurrence_table, ScaledPmfTable};

/// Near-ties closer than this (relative) are flagged as marginal.
pub const MARGINAL_TIE_TOL: f64 = 1e-13;

/// First difference p_n - p_{n-1} on the second block, n in [k+2, 2k],
/// from the two-sum closed form
/// sum_{j=2..n} C(n-2, j-2) lambda^j/j! - lambda sum_{j=1..n-k-1} C(n-k-2, j-1) lambda^j/j!.
pub fn block_first_difference(params: &Params, n: u32) -> Result<f64> {
    let k = params.k();
    if n < k + 2 || n > 2 * k {
        return Err(Error::OutsideBlock { n, k });
    }
    let lambda = params.lambda();
    let n = n as u64;
    let k = k as u64;

    // first sum: t_2 = lambda^2/2, t_{j+1} = t_j (n-j) lambda / ((j-1)(j+1))
    let mut term = lambda * lambda / 2.0;
    let mut first = term;
    for j in 2..n {
        term *= (n - j) as f64 * lambda / (((j - 1) * (j + 1)) as f64);
        first += term;
    }
    // second sum: u_1 = lambda, u_{j+1} = u_j (n-k-1-j) lambda / (j(j+1))
    let upper = n - k - 1;
    let mut u = lambda;
    let mut second = u;
    for j in 1..upper {
        u *= (upper - j) as f64 * lambda / ((j * (j + 1)) as f64);
        second += u;
    }
    Ok(first - lambda * second)
}

/// Shape summary of the pmf from n = k out to a cap.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub params: Params,
    /// p_n strictly decreasing across n in [k, 2k].
    pub decreasing_on_block: bool,
    /// Delta_2(n) < 0 for n in [k+3, 2k] (vacuously true for k = 2).
    pub concave_on_block: bool,
    /// Largest N <= cap with p_n strictly decreasing on [k, N].
    pub decreasing_tail_to: u32,
    /// First n >= k with p_{n+1} >= p_n, if any.
    pub first_violation: Option<u32>,
    /// Indices n where |p_{n+1} - p_n| < 1e-13 p_n: root-boundary ties.
    pub marginal_ties: Vec<u32>,
}

impl StructureReport {
    /// True when the pmf decreases strictly on the whole inspected tail.
    pub fn decreasing_to_cap(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Tabulates the pmf to `cap` by the recurrence and classifies the block
/// and tail shape. Strict inequalities with zero tolerance; computed exact
/// ties count as violations of strict decrease but are also recorded as
/// marginal.
pub fn structure_report(params: &Params, cap: u32) -> Result<StructureReport> {
    let k = params.k();
    if k < 2 {
        return Err(Error::OrderTooSmall { got: k, min: 2 });
    }
    if cap < 2 * k {
        return Err(Error::CapTooSmall { cap, min: 2 * k });
    }
    let table = pmf_recurrence_table(params, cap);
    Ok(classify(params, &table, cap))
}

fn classify(params: &Params, table: &ScaledPmfTable, cap: u32) -> StructureReport {
    let k = params.k() as usize;
    let p = table.values();

    let decreasing_on_block = (k..2 * k).all(|n| p[n + 1] < p[n]);
    let concave_on_block = (k + 3..=2 * k).all(|n| p[n] - 2.0 * p[n - 1] + p[n - 2] < 0.0);

    let mut first_violation = None;
    let mut marginal_ties = Vec::new();
    for n in k..cap as usize {
        if (p[n + 1] - p[n]).abs() < MARGINAL_TIE_TOL * p[n] {
            marginal_ties.push(n as u32);
        }
        if p[n + 1] >= p[n] && first_violation.is_none() {
            first_violation = Some(n as u32);
        }
    }
    let decreasing_tail_to = first_violation.unwrap_or(cap);

    StructureReport {
        params: *params,
        decreasing_on_block,
        concave_on_block,
        decreasing_tail_to,
        first_violation,
        marginal_ties,
    }
}
