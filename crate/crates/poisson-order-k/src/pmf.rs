//! Evaluation of the scaled pmf p_n = h_k(n; lambda) = e^(k lambda) f_k(n; lambda).
//!
//! Three independent routes are provided:
//!
//! * [`pmf_bruteforce`] enumerates the defining composition sum directly and
//!   serves as the oracle for the other two at small instances;
//! * [`pmf_recurrence_table`] runs the k-term recurrence
//!   p_n = (lambda/n) sum_{j=1..k} j p_{n-j}, the workhorse evaluator;
//! * [`pmf_km_sum`] evaluates the Kostadinova-Minkova combinatorial closed
//!   form, including the alternating correction for n > k.
//!
//! For k = 2 there is additionally [`pmf_k2_closed`], a two-index closed form
//! that exists purely as an extra validation path.
//!
//! Terms of the form lambda^j / j! are always built by running-ratio updates
//! (multiply by lambda/j), never from separate powers and factorials, so the
//! evaluators stay usable for n in the hundreds.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::params::Params;

/// Which evaluation route produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    Recurrence,
    KmSum,
    BruteForce,
}

impl EvalMethod {
    pub fn name(self) -> &'static str {
        match self {
            EvalMethod::Recurrence => "recurrence",
            EvalMethod::KmSum => "km",
            EvalMethod::BruteForce => "brute",
        }
    }
}

/// The sequence p_0..p_N for fixed parameters, immutable once built.
#[derive(Debug, Clone)]
pub struct ScaledPmfTable {
    params: Params,
    values: Vec<f64>,
    method: EvalMethod,
}

impl ScaledPmfTable {
    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, n: u32) -> Option<f64> {
        self.values.get(n as usize).copied()
    }

    /// Largest tabulated index N.
    pub fn n_max(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn method(&self) -> EvalMethod {
        self.method
    }
}

/// Default tuple budget for the brute-force oracle.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Default truncation cap for [`normalization_check`].
pub const DEFAULT_TRUNCATION_CAP: u32 = 100_000;

/// Evaluates p_n by direct enumeration of the composition sum: all
/// non-negative integer tuples (n_1, ..., n_k) with n_1 + 2 n_2 + ... + k n_k = n,
/// each contributing lambda^(n_1+...+n_k) / (n_1! ... n_k!).
///
/// This is the independent oracle for the other evaluators. The tuple count
/// grows combinatorially; instances exceeding the budget are rejected.
pub fn pmf_bruteforce(params: &Params, n: u32) -> Result<f64> {
    pmf_bruteforce_with_budget(params, n, DEFAULT_ENUMERATION_BUDGET)
}

pub fn pmf_bruteforce_with_budget(params: &Params, n: u32, budget: u64) -> Result<f64> {
    let mut remaining = budget;
    let mut acc = 0.0;
    enumerate(
        params.k(),
        n,
        params.lambda(),
        1.0,
        &mut remaining,
        &mut acc,
    )
    .map_err(|_| Error::EnumerationBudget { budget })?;
    Ok(acc)
}

/// Recurse over part sizes k, k-1, ..., 1 choosing the multiplicity of each.
/// `weight` carries lambda^(chosen so far) / (product of factorials).
fn enumerate(
    part: u32,
    remaining_sum: u32,
    lambda: f64,
    weight: f64,
    budget: &mut u64,
    acc: &mut f64,
) -> std::result::Result<(), ()> {
    if part == 1 {
        if *budget == 0 {
            return Err(());
        }
        *budget -= 1;
        // the multiplicity of part 1 is forced: n_1 = remaining_sum
        let mut w = weight;
        for r in 1..=remaining_sum {
            w *= lambda / r as f64;
        }
        *acc += w;
        return Ok(());
    }
    let mut w = weight;
    let mut count = 0u32;
    loop {
        enumerate(
            part - 1,
            remaining_sum - count * part,
            lambda,
            w,
            budget,
            acc,
        )?;
        count += 1;
        if count * part > remaining_sum {
            return Ok(());
        }
        w *= lambda / count as f64;
    }
}

/// Tabulates p_0..p_{n_max} by the recurrence
/// p_n = (lambda/n) sum_{j=1..k} j p_{n-j}, terms with negative indices
/// treated as zero. O(k n_max) arithmetic.
pub fn pmf_recurrence_table(params: &Params, n_max: u32) -> ScaledPmfTable {
    let k = params.k() as usize;
    let lambda = params.lambda();
    let mut values = vec![0.0; n_max as usize + 1];
    values[0] = 1.0;
    for n in 1..=n_max as usize {
        let jmax = n.min(k);
        let mut acc = 0.0;
        for j in 1..=jmax {
            acc += j as f64 * values[n - j];
        }
        values[n] = lambda * acc / n as f64;
    }
    ScaledPmfTable {
        params: *params,
        values,
        method: EvalMethod::Recurrence,
    }
}

/// Evaluates p_n from the Kostadinova-Minkova combinatorial closed form:
/// p_0 = 1; for n in [1, k] the single binomial sum
/// sum_{j=1..n} C(n-1, j-1) lambda^j / j!; for n = l(k+1) + m (l >= 1,
/// m in [0, k]) the same sum minus the alternating correction
/// sum_{i=1..l} (-1)^(i-1) (lambda^i / i!) sum_{j=0..n-i(k+1)}
/// C(n-i(k+1)+i-1, j+i-1) lambda^j / j!.
///
/// Internally computed in double-double arithmetic: for n well beyond k the
/// correction cancels the main sum almost completely, and plain f64 loses
/// the result entirely.
pub fn pmf_km_sum(params: &Params, n: u32) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let k = params.k() as u64;
    let lambda = params.lambda();
    let n = n as u64;

    // main sum: t_1 = lambda, t_{j+1} = t_j * lambda (n-j) / (j (j+1))
    let mut term = Dd::from_f64(lambda);
    let mut acc = term;
    for j in 1..n {
        term = term
            .mul_f64(lambda)
            .mul_f64((n - j) as f64)
            .div_f64((j * (j + 1)) as f64);
        acc = acc.add(term);
    }

    let blocks = n / (k + 1);
    let mut outer = Dd::ONE; // lambda^i / i!
    for i in 1..=blocks {
        outer = outer.mul_f64(lambda).div_f64(i as f64);
        let upper = n - i * (k + 1);
        // inner t_0 = C(upper + i - 1, i - 1)
        let mut inner_term = Dd::ONE;
        for r in 1..i {
            inner_term = inner_term.mul_f64((upper + r) as f64).div_f64(r as f64);
        }
        let mut inner = inner_term;
        for j in 0..upper {
            inner_term = inner_term
                .mul_f64(lambda)
                .mul_f64((upper - j) as f64)
                .div_f64(((j + i) * (j + 1)) as f64);
            inner = inner.add(inner_term);
        }
        let contribution = outer.mul(inner);
        acc = if i % 2 == 1 {
            acc.add(contribution.neg())
        } else {
            acc.add(contribution)
        };
    }
    acc.value()
}

/// Tabulates p_0..p_{n_max} via [`pmf_km_sum`].
pub fn pmf_km_table(params: &Params, n_max: u32) -> ScaledPmfTable {
    let values = (0..=n_max).map(|n| pmf_km_sum(params, n)).collect();
    ScaledPmfTable {
        params: *params,
        values,
        method: EvalMethod::KmSum,
    }
}

/// Tabulates p_0..p_{n_max} via [`pmf_bruteforce`], sharing one budget
/// across all entries.
pub fn pmf_bruteforce_table(params: &Params, n_max: u32, budget: u64) -> Result<ScaledPmfTable> {
    let mut remaining = budget;
    let mut values = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let mut acc = 0.0;
        enumerate(
            params.k(),
            n,
            params.lambda(),
            1.0,
            &mut remaining,
            &mut acc,
        )
        .map_err(|_| Error::EnumerationBudget { budget })?;
        values.push(acc);
    }
    Ok(ScaledPmfTable {
        params: *params,
        values,
        method: EvalMethod::BruteForce,
    })
}

/// k = 2 closed form p_n = sum_{j=0..floor(n/2)} lambda^(n-j) / ((n-2j)! j!).
/// Exists solely as an extra validation path for k = 2.
pub fn pmf_k2_closed(lambda: f64, n: u32) -> Result<f64> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::InvalidLambda(lambda));
    }
    // t_0 = lambda^n / n!
    let mut term = 1.0;
    for r in 1..=n {
        term *= lambda / r as f64;
    }
    let mut acc = term;
    for j in 0..n / 2 {
        // t_{j+1} / t_j = (n-2j)(n-2j-1) / (lambda (j+1))
        let a = (n - 2 * j) as f64;
        term *= a * (a - 1.0) / (lambda * (j + 1) as f64);
        acc += term;
    }
    Ok(acc)
}

/// h_k(k; lambda) = sum_{j=1..k} C(k-1, j-1) lambda^j / j!, the scaled pmf
/// at n = k. All terms are positive, so plain f64 is forward stable, and an
/// overflow saturates to +inf without ever producing NaN; the threshold
/// solvers rely on both properties at large k.
pub fn scaled_pmf_at_order(k: u32, lambda: f64) -> f64 {
    let k = k as u64;
    let mut term = lambda;
    let mut acc = term;
    for j in 1..k {
        term *= lambda * (k - j) as f64 / ((j * (j + 1)) as f64);
        acc += term;
    }
    acc
}

/// Result of a normalization scan: the smallest N whose truncated sum leaves
/// a defect below the requested tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub n: u32,
    pub defect: f64,
}

/// Finds the smallest N with 1 - e^(-k lambda) sum_{n=0..N} p_n < tol,
/// using the recurrence evaluator. Fails if N would exceed the cap, which
/// indicates numerical blow-up rather than slow convergence.
pub fn normalization_check(params: &Params, tol: f64) -> Result<Normalization> {
    normalization_check_with_cap(params, tol, DEFAULT_TRUNCATION_CAP)
}

pub fn normalization_check_with_cap(params: &Params, tol: f64, cap: u32) -> Result<Normalization> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidTolerance(tol));
    }
    let k = params.k() as usize;
    let lambda = params.lambda();
    let scale = (-(params.k() as f64) * lambda).exp();
    let mut values = vec![1.0];
    let mut sum = 1.0;
    let mut n = 0u32;
    let mut defect = 1.0 - scale * sum;
    while defect >= tol {
        n += 1;
        if n > cap {
            return Err(Error::TruncationCap { cap, defect });
        }
        let idx = n as usize;
        let jmax = idx.min(k);
        let mut acc = 0.0;
        for j in 1..=jmax {
            acc += j as f64 * values[idx - j];
        }
        values.push(lambda * acc / idx as f64);
        sum += values[idx];
        defect = 1.0 - scale * sum;
    }
    Ok(Normalization { n, defect })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: u32, lambda: f64) -> Params {
        Params::new(k, lambda).unwrap()
    }

    #[test]
    fn bruteforce_frozen_values() {
        // empty composition only
        assert_eq!(pmf_bruteforce(&params(2, 0.7), 0).unwrap(), 1.0);
        // k=1 is the standard Poisson: single tuple n_1 = 3
        let p = pmf_bruteforce(&params(1, 0.5), 3).unwrap();
        assert!((p - 0.5f64.powi(3) / 6.0).abs() < 1e-16);
        // p_2 = lambda^2/2 + lambda at lambda=1
        let p = pmf_bruteforce(&params(2, 1.0), 2).unwrap();
        assert!((p - 1.5).abs() < 1e-15);
        // p_4 = lambda^4/4! + lambda^3/2! + 3 lambda^2/2 at lambda=1 is 49/24
        let p = pmf_bruteforce(&params(3, 1.0), 4).unwrap();
        assert!((p - 49.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn bruteforce_budget_exceeded() {
        let err = pmf_bruteforce_with_budget(&params(4, 1.0), 20, 10).unwrap_err();
        assert!(matches!(err, Error::EnumerationBudget { budget: 10 }));
    }

    #[test]
    fn recurrence_frozen_values() {
        let t = pmf_recurrence_table(&params(2, 1.0), 4);
        let expect = [1.0, 1.0, 1.5, 7.0 / 6.0, 25.0 / 24.0];
        for (n, e) in expect.iter().enumerate() {
            assert!((t.values()[n] - e).abs() < 1e-15, "n={n}");
        }
        let t = pmf_recurrence_table(&params(3, 0.5), 0);
        assert_eq!(t.values(), &[1.0]);
    }

    #[test]
    fn recurrence_reduces_to_poisson_for_k1() {
        for &lambda in &[0.25, 1.0, 3.5] {
            let t = pmf_recurrence_table(&params(1, lambda), 20);
            let mut expect = 1.0;
            for n in 0..=20u32 {
                if n > 0 {
                    expect *= lambda / n as f64;
                }
                let got = t.values()[n as usize];
                assert!(
                    (got - expect).abs() <= 1e-13 * expect,
                    "lambda={lambda} n={n}: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn lambda_zero_tabulates_degenerate_pmf() {
        let t = pmf_recurrence_table(&params(3, 0.0), 5);
        assert_eq!(t.values()[0], 1.0);
        assert!(t.values()[1..].iter().all(|&v| v == 0.0));
        assert_eq!(pmf_km_sum(&params(3, 0.0), 4), 0.0);
        assert_eq!(pmf_bruteforce(&params(3, 0.0), 4).unwrap(), 0.0);
    }

    #[test]
    fn km_sum_frozen_values() {
        // worked n=3 case at lambda=1: 1/3! + 1 = 7/6
        let p = pmf_km_sum(&params(2, 1.0), 3);
        assert!((p - 7.0 / 6.0).abs() < 1e-15);
        // worked n=6 case at lambda=1: 1/3! + 1/(2!2!) + 1/(4!1!) + 1/6! = 331/720
        let p = pmf_km_sum(&params(2, 1.0), 6);
        assert!((p - 331.0 / 720.0).abs() < 1e-15);
        // deep in the correction region, the recurrence is the oracle
        let pr = params(5, 0.3);
        let t = pmf_recurrence_table(&pr, 17);
        let km = pmf_km_sum(&pr, 17);
        let rec = t.values()[17];
        assert!((km - rec).abs() <= 1e-13 * rec.max(1.0));
    }

    #[test]
    fn km_matches_recurrence_on_desk_grid() {
        for k in 1..=6u32 {
            for &lambda in &[0.1, 0.5, 1.0, 2.0] {
                let pr = params(k, lambda);
                let table = pmf_recurrence_table(&pr, 20);
                for n in 0..=20u32 {
                    let rec = table.values()[n as usize];
                    let km = pmf_km_sum(&pr, n);
                    let err = (rec - km).abs() / rec.max(1.0);
                    assert!(err < 1e-12, "k={k} lambda={lambda} n={n}: err={err:e}");
                }
            }
        }
    }

    #[test]
    fn k2_closed_frozen_values() {
        // p_8 at lambda=1: 1/8! + 1/6! + 1/(4!2!) + 1/(2!3!) + 1/(0!4!) = 1979/13440
        let p = pmf_k2_closed(1.0, 8).unwrap();
        assert!((p - 1979.0 / 13440.0).abs() < 1e-15);
        assert_eq!(pmf_k2_closed(2.0, 1).unwrap(), 2.0);
        let a = pmf_k2_closed(0.7, 5).unwrap();
        let b = pmf_km_sum(&params(2, 0.7), 5);
        assert!((a - b).abs() < 1e-15 * a);
        assert!(pmf_k2_closed(-1.0, 2).is_err());
    }

    #[test]
    fn k2_closed_matches_km_over_range() {
        for &lambda in &[0.1, 1.0, 2.0, 5.0] {
            let pr = params(2, lambda);
            for n in 0..=30u32 {
                let closed = pmf_k2_closed(lambda, n).unwrap();
                let km = pmf_km_sum(&pr, n);
                let err = (closed - km).abs() / closed.max(1.0);
                assert!(err < 1e-12, "lambda={lambda} n={n}: err={err:e}");
            }
        }
    }

    #[test]
    fn scaled_pmf_at_order_matches_km_branch() {
        for &(k, lambda) in &[(2u32, 0.9), (5, 0.4), (40, 0.1), (300, 0.02)] {
            let h = scaled_pmf_at_order(k, lambda);
            let km = pmf_km_sum(&params(k, lambda), k);
            assert!((h - km).abs() <= 1e-13 * h, "k={k}");
        }
        // stays usable out at the published sweep scale and saturates to
        // +inf rather than NaN when it finally overflows
        let h = scaled_pmf_at_order(40_000, 3.0);
        assert!(h.is_finite() && h > 2.0);
        let h = scaled_pmf_at_order(200_000, 3.0);
        assert!(h.is_infinite() && h > 0.0);
    }

    #[test]
    fn table_head_is_one_and_first_block_increases() {
        for &(k, lambda) in &[(2u32, 0.5), (5, 1.3), (12, 0.2)] {
            let t = pmf_recurrence_table(&params(k, lambda), 2 * k);
            assert_eq!(t.values()[0], 1.0);
            assert!(t.values().iter().all(|&v| v >= 0.0));
            for n in 1..k as usize {
                assert!(t.values()[n] < t.values()[n + 1], "k={k} n={n}");
            }
        }
    }

    #[test]
    fn normalization_frozen_fixtures() {
        let r = normalization_check(&params(1, 1.0), 1e-9).unwrap();
        assert!(r.defect < 1e-9 && r.defect >= 0.0);
        assert_eq!(r.n, 11);
        let r = normalization_check(&params(2, 1.29), 1e-9).unwrap();
        assert!(r.defect < 1e-9);
        assert_eq!(r.n, 28);
        let r = normalization_check(&params(10, 0.3), 1e-9).unwrap();
        assert!(r.defect < 1e-9);
        assert_eq!(r.n, 119);
    }

    #[test]
    fn normalization_is_minimal_and_monotone() {
        let pr = params(2, 1.0);
        let r = normalization_check(&pr, 1e-9).unwrap();
        // defect at N-1 must still be at or above tol
        let t = pmf_recurrence_table(&pr, r.n);
        let scale = (-2.0f64).exp();
        let mut partial = 0.0;
        let mut prev_covered = 0.0;
        for (n, &v) in t.values().iter().enumerate() {
            partial += v;
            let covered = scale * partial;
            assert!(covered >= prev_covered);
            prev_covered = covered;
            if n + 1 == t.values().len() {
                assert!(1.0 - covered < 1e-9);
            } else if n + 2 == t.values().len() {
                assert!(1.0 - covered >= 1e-9);
            }
        }
    }

    #[test]
    fn normalization_cap_signals_failure() {
        let err = normalization_check_with_cap(&params(2, 1.0), 1e-9, 5).unwrap_err();
        assert!(matches!(err, Error::TruncationCap { cap: 5, .. }));
        assert!(normalization_check(&params(2, 1.0), 0.0).is_err());
    }

    #[test]
    fn mean_identity_on_acceptance_pairs() {
        for &(k, lambda) in &[(2u32, 1.29), (3, 0.82), (10, 0.3), (50, 0.05)] {
            let pr = params(k, lambda);
            let norm = normalization_check(&pr, 1e-9).unwrap();
            let t = pmf_recurrence_table(&pr, norm.n);
            let scale = (-(k as f64) * lambda).exp();
            let mean: f64 = t
                .values()
                .iter()
                .enumerate()
                .map(|(n, &v)| n as f64 * scale * v)
                .sum();
            let expect = pr.kappa() * lambda;
            assert!(
                (mean - expect).abs() <= 1e-8 * expect,
                "k={k}: {mean} vs {expect}"
            );
        }
    }

    #[test]
    fn lowest_power_scaling_near_zero() {
        // for n in [(i-1)k+1, ik], p_n scales as lambda^i near zero
        for &k in &[2u32, 3, 5] {
            let hi = pmf_recurrence_table(&params(k, 1e-6), 3 * k);
            let lo = pmf_recurrence_table(&params(k, 5e-7), 3 * k);
            for n in 1..=3 * k {
                let block = n.div_ceil(k);
                let ratio = hi.values()[n as usize] / lo.values()[n as usize];
                let expect = 2.0f64.powi(block as i32);
                assert!(
                    (ratio - expect).abs() <= 0.01 * expect,
                    "k={k} n={n}: ratio={ratio}"
                );
            }
        }
    }
}
