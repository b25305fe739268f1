//! Command implementations behind the `poisson-order-k` binary.
//!
//! Each command validates its flags, runs the corresponding library
//! routine, and writes CSV (or plain text) to the supplied writer. Output
//! is deterministic: identical flags produce byte-identical bytes. NaN
//! never appears in output; numerical failures abort with an error instead.
//!
//! Exit-code convention, applied by the binary:
//! 0 success/verified, 1 verification failed, 2 usage error, 3 numerical
//! failure.

use std::io::Write;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::pmf::{
    pmf_bruteforce_table, pmf_km_table, pmf_recurrence_table, ScaledPmfTable,
    DEFAULT_ENUMERATION_BUDGET,
};
use crate::structure::structure_report;
use crate::sweep::{fit_inverse_root, sufficient_bound_scan, sweep, sweep_orders, thinned_orders};

/// Evaluator selection for the `pmf` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmfMethod {
    Recurrence,
    Km,
    Brute,
    All,
}

/// Failures the binary distinguishes: command-line misuse detected outside
/// the library (exit 2) versus library errors (exit 2 or 3 by kind).
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Lib(e)
    }
}

/// Exit code for a library error: 2 for bad arguments, 3 for numerical
/// failures.
pub fn exit_code(err: &Error) -> u8 {
    if err.is_usage() {
        2
    } else {
        3
    }
}

fn fmt_p(v: f64) -> String {
    format!("{v:.15e}")
}

/// `pmf`: tabulate p_0..p_{n_max} by the selected evaluator(s). With
/// `all`, an extra column reports the worst pairwise deviation per row,
/// relative to max(1, recurrence value).
pub fn cmd_pmf(
    k: u32,
    lambda: f64,
    n_max: u32,
    method: PmfMethod,
    out: &mut dyn Write,
) -> Result<()> {
    let params = Params::new(k, lambda)?;
    let single = |table: ScaledPmfTable, out: &mut dyn Write| -> Result<()> {
        writeln!(out, "n,{}", table.method().name())?;
        for (n, &v) in table.values().iter().enumerate() {
            writeln!(out, "{n},{}", fmt_p(v))?;
        }
        Ok(())
    };
    match method {
        PmfMethod::Recurrence => single(pmf_recurrence_table(&params, n_max), out),
        PmfMethod::Km => single(pmf_km_table(&params, n_max), out),
        PmfMethod::Brute => single(
            pmf_bruteforce_table(&params, n_max, DEFAULT_ENUMERATION_BUDGET)?,
            out,
        ),
        PmfMethod::All => {
            let rec = pmf_recurrence_table(&params, n_max);
            let km = pmf_km_table(&params, n_max);
            let brute = pmf_bruteforce_table(&params, n_max, DEFAULT_ENUMERATION_BUDGET)?;
            writeln!(out, "n,recurrence,km,brute,max_rel_err")?;
            for n in 0..=n_max as usize {
                let (r, m, b) = (rec.values()[n], km.values()[n], brute.values()[n]);
                let scale = r.abs().max(1.0);
                let err = (r - m).abs().max((r - b).abs()).max((m - b).abs()) / scale;
                writeln!(out, "{n},{},{},{},{err:.3e}", fmt_p(r), fmt_p(m), fmt_p(b))?;
            }
            Ok(())
        }
    }
}

/// `diff`: the first-block finite-difference scan as CSV. Returns false
/// (verification failure) if any cell is non-positive; the report is
/// written either way.
pub fn cmd_diff(k: u32, lambda: f64, out: &mut dyn Write) -> Result<bool> {
    if lambda <= 0.0 || lambda.is_nan() {
        return Err(Error::NonPositiveLambda(lambda));
    }
    let params = Params::new(k, lambda)?;
    let report = crate::differences::absolute_monotonicity_report(&params)?;
    writeln!(out, "m,n,delta_recursive,delta_closed,rel_err")?;
    for cell in &report.cells {
        writeln!(
            out,
            "{},{},{},{},{:.3e}",
            cell.m,
            cell.n,
            fmt_p(cell.recursive),
            fmt_p(cell.closed),
            cell.rel_err
        )?;
    }
    Ok(report.all_positive)
}

/// `verify`: tail-decrease check for one (k, lambda). Plain-text report by
/// default, single CSV row with `csv = true`. Returns false when the pmf
/// fails to decrease strictly out to the cap.
pub fn cmd_verify(
    k: u32,
    lambda: f64,
    cap: Option<u32>,
    csv: bool,
    out: &mut dyn Write,
) -> Result<bool> {
    if lambda <= 0.0 || lambda.is_nan() {
        return Err(Error::NonPositiveLambda(lambda));
    }
    let params = Params::new(k, lambda)?;
    let cap = cap.unwrap_or_else(|| (6 * k).max(200));
    let report = structure_report(&params, cap)?;
    let violation = report
        .first_violation
        .map(|n| n.to_string())
        .unwrap_or_default();
    if csv {
        writeln!(
            out,
            "k,lambda,decreasing_block,concave_block,decreasing_tail_to,first_violation"
        )?;
        writeln!(
            out,
            "{k},{lambda},{},{},{},{violation}",
            report.decreasing_on_block, report.concave_on_block, report.decreasing_tail_to
        )?;
    } else {
        writeln!(out, "k: {k}")?;
        writeln!(out, "lambda: {lambda}")?;
        writeln!(out, "cap: {cap}")?;
        writeln!(out, "decreasing_on_block: {}", report.decreasing_on_block)?;
        writeln!(out, "concave_on_block: {}", report.concave_on_block)?;
        writeln!(out, "decreasing_tail_to: {}", report.decreasing_tail_to)?;
        writeln!(
            out,
            "first_violation: {}",
            if violation.is_empty() {
                "none"
            } else {
                &violation
            }
        )?;
        let ties = report
            .marginal_ties
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(
            out,
            "marginal_ties: {}",
            if ties.is_empty() { "none" } else { &ties }
        )?;
        writeln!(
            out,
            "verdict: {}",
            if report.decreasing_to_cap() {
                "decreasing to cap"
            } else {
                "not decreasing"
            }
        )?;
    }
    Ok(report.decreasing_to_cap())
}

/// `thresholds`: one row per order. The default four columns mirror the
/// published table (9-decimal fixed format); `full` adds r_k, t_k and the
/// necessary bound.
pub fn cmd_thresholds(
    k_min: u32,
    k_max: u32,
    rel_tol: f64,
    full: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let rows = sweep(k_min, k_max, rel_tol)?;
    if full {
        writeln!(
            out,
            "k,r_k,t_k,lambda_k1k2,nine_over_4km1,four_over_kp1,difference"
        )?;
        for r in &rows {
            writeln!(
                out,
                "{},{:.9},{:.9},{:.9},{:.9},{:.9},{:.9}",
                r.k,
                r.r_k,
                r.t_k,
                r.lambda_k1k2,
                r.bound_sufficient,
                r.bound_necessary,
                r.lambda_k1k2 - r.bound_sufficient
            )?;
        }
    } else {
        writeln!(out, "k,lambda_k1k2,nine_over_4km1,difference")?;
        for r in &rows {
            writeln!(
                out,
                "{},{:.9},{:.9},{:.9}",
                r.k,
                r.lambda_k1k2,
                r.bound_sufficient,
                r.lambda_k1k2 - r.bound_sufficient
            )?;
        }
    }
    Ok(())
}

/// `fit`: sweep, fit 1/lambda against k, and write the fit summary. The
/// figure files receive the fitted line data and the signed residuals.
#[allow(clippy::too_many_arguments)]
pub fn cmd_fit(
    k_min: u32,
    k_max: u32,
    rel_tol: f64,
    thin: bool,
    out: &mut dyn Write,
    fig4: Option<&mut dyn Write>,
    fig5: Option<&mut dyn Write>,
) -> Result<()> {
    let rows = if thin {
        sweep_orders(&thinned_orders(k_min, k_max), rel_tol)?
    } else {
        sweep(k_min, k_max, rel_tol)?
    };
    let data: Vec<(u32, f64)> = rows.iter().map(|r| (r.k, r.lambda_k1k2)).collect();
    let fit = fit_inverse_root(&data)?;
    writeln!(out, "{{")?;
    writeln!(out, "  \"alpha\": {:.12},", fit.alpha)?;
    writeln!(out, "  \"beta\": {:.12},", fit.beta)?;
    writeln!(out, "  \"max_residual\": {:.6e},", fit.max_residual)?;
    writeln!(out, "  \"min_residual\": {:.6e},", fit.min_residual)?;
    writeln!(out, "  \"k_range\": [{}, {}]", fit.k_range.0, fit.k_range.1)?;
    writeln!(out, "}}")?;
    if let Some(w) = fig4 {
        writeln!(w, "k,inv_lambda,fit_value")?;
        for &(k, lambda) in &data {
            let value = fit.alpha * k as f64 + fit.beta;
            writeln!(w, "{k},{:.9},{value:.9}", 1.0 / lambda)?;
        }
    }
    if let Some(w) = fig5 {
        writeln!(w, "k,fit_minus_inv_lambda")?;
        for &(k, lambda) in &data {
            let r = fit.alpha * k as f64 + fit.beta - 1.0 / lambda;
            writeln!(w, "{k},{r:.9}")?;
        }
    }
    Ok(())
}

/// `conjecture-scan`: probe the sufficient bound for each order; returns
/// false if any order fails either side of the probe.
pub fn cmd_conjecture_scan(
    k_min: u32,
    k_max: u32,
    cap_mult: u32,
    out: &mut dyn Write,
) -> Result<bool> {
    let entries = sufficient_bound_scan(k_min, k_max, cap_mult)?;
    writeln!(
        out,
        "k,lambda_low,decreasing_at_low,lambda_high,violation_at_high,passed"
    )?;
    let mut all = true;
    for e in &entries {
        all &= e.passed();
        writeln!(
            out,
            "{},{:.9},{},{:.9},{},{}",
            e.k,
            e.lambda_low,
            e.decreasing_at_low,
            e.lambda_high,
            e.violation_at_high,
            e.passed()
        )?;
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_pmf(k: u32, lambda: f64, n_max: u32, method: PmfMethod) -> String {
        let mut buf = Vec::new();
        cmd_pmf(k, lambda, n_max, method, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn pmf_all_reports_tiny_cross_error() {
        let text = run_pmf(2, 1.0, 4, PmfMethod::All);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,recurrence,km,brute,max_rel_err");
        assert_eq!(lines.len(), 6);
        let expect = [1.0, 1.0, 1.5, 7.0 / 6.0, 25.0 / 24.0];
        for (n, e) in expect.iter().enumerate() {
            let fields: Vec<&str> = lines[n + 1].split(',').collect();
            let rec: f64 = fields[1].parse().unwrap();
            assert!((rec - e).abs() < 1e-14, "row {n}");
            let err: f64 = fields[4].parse().unwrap();
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn pmf_single_method_column_is_named() {
        let text = run_pmf(1, 1.0, 5, PmfMethod::Recurrence);
        assert!(text.starts_with("n,recurrence\n"));
        let text = run_pmf(1, 1.0, 2, PmfMethod::Km);
        assert!(text.starts_with("n,km\n"));
        let text = run_pmf(1, 1.0, 2, PmfMethod::Brute);
        assert!(text.starts_with("n,brute\n"));
    }

    #[test]
    fn diff_writes_single_cell_for_k2() {
        let mut buf = Vec::new();
        let ok = cmd_diff(2, 0.5, &mut buf).unwrap();
        assert!(ok);
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields[0], "1");
        assert_eq!(fields[1], "2");
        let closed: f64 = fields[3].parse().unwrap();
        assert!((closed - 0.125).abs() < 1e-15);
    }

    #[test]
    fn diff_requires_positive_lambda_and_k2() {
        let mut buf = Vec::new();
        assert!(matches!(
            cmd_diff(2, 0.0, &mut buf),
            Err(Error::NonPositiveLambda(_))
        ));
        assert!(matches!(
            cmd_diff(1, 1.0, &mut buf),
            Err(Error::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn verify_text_and_exit_semantics() {
        let mut buf = Vec::new();
        let ok = cmd_verify(3, 0.8, Some(60), false, &mut buf).unwrap();
        assert!(ok);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("verdict: decreasing to cap"));

        let mut buf = Vec::new();
        let ok = cmd_verify(10, 0.3, None, false, &mut buf).unwrap();
        assert!(!ok);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("first_violation: 11"));
    }

    #[test]
    fn verify_csv_row_layout() {
        let mut buf = Vec::new();
        cmd_verify(10, 0.2, Some(60), true, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "k,lambda,decreasing_block,concave_block,decreasing_tail_to,first_violation"
        );
        assert_eq!(text.lines().nth(1).unwrap(), "10,0.2,true,true,60,");
    }

    #[test]
    fn thresholds_row_matches_published_digits() {
        let mut buf = Vec::new();
        cmd_thresholds(3, 3, 1e-12, false, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "k,lambda_k1k2,nine_over_4km1,difference"
        );
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "3,0.821876885,0.818181818,0.003695066"
        );
    }

    #[test]
    fn thresholds_full_layout() {
        let mut buf = Vec::new();
        cmd_thresholds(2, 2, 1e-12, true, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "k,r_k,t_k,lambda_k1k2,nine_over_4km1,four_over_kp1,difference"
        );
        let fields: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(fields[0], "2");
        assert_eq!(fields[1], "0.732050808");
        assert_eq!(fields[2], "1.236067977");
        assert_eq!(fields[3], "1.291502622");
    }

    #[test]
    fn fit_emits_figure_data() {
        let mut out = Vec::new();
        let mut fig4 = Vec::new();
        let mut fig5 = Vec::new();
        cmd_fit(
            2,
            40,
            1e-12,
            false,
            &mut out,
            Some(&mut fig4),
            Some(&mut fig5),
        )
        .unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("\"alpha\""));
        assert!(text.contains("\"k_range\": [2, 40]"));
        let fig4 = String::from_utf8(fig4).unwrap();
        assert_eq!(fig4.lines().next().unwrap(), "k,inv_lambda,fit_value");
        assert_eq!(fig4.lines().count(), 40); // header + 39 orders
        let fig5 = String::from_utf8(fig5).unwrap();
        assert_eq!(fig5.lines().next().unwrap(), "k,fit_minus_inv_lambda");
    }

    #[test]
    fn conjecture_scan_reports_all_rows() {
        let mut buf = Vec::new();
        let ok = cmd_conjecture_scan(2, 6, 6, &mut buf).unwrap();
        assert!(ok);
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 6);
        assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    }

    #[test]
    fn exit_codes_split_usage_from_numerical() {
        assert_eq!(exit_code(&Error::OrderTooSmall { got: 0, min: 2 }), 2);
        assert_eq!(exit_code(&Error::InvalidRange { k_min: 9, k_max: 2 }), 2);
        assert_eq!(exit_code(&Error::EnumerationBudget { budget: 7 }), 3);
        assert_eq!(exit_code(&Error::MaxIterations { limit: 200 }), 3);
    }

    #[test]
    fn outputs_are_byte_identical_across_runs() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        cmd_thresholds(2, 8, 1e-12, false, &mut a).unwrap();
        cmd_thresholds(2, 8, 1e-12, false, &mut b).unwrap();
        assert_eq!(a, b);
        let a = run_pmf(10, 0.3, 30, PmfMethod::All);
        let b = run_pmf(10, 0.3, 30, PmfMethod::All);
        assert_eq!(a, b);
    }
}
