//! Sweep the threshold lambda_{k+1,k+2} over a range of orders and fit its
//! inverse to a straight line in k. The slope lands near 4/9 and the
//! intercept near -1/9, with signed residuals straddling zero.
//!
//! ```bash
//! cargo run --release --example inverse_fit
//! ```

use poisson_order_k::sweep::{fit_inverse_root, sweep};

fn main() {
    let k_max = 500;
    let rows = sweep(2, k_max, 1e-12).unwrap();
    let data: Vec<(u32, f64)> = rows.iter().map(|r| (r.k, r.lambda_k1k2)).collect();
    let fit = fit_inverse_root(&data).unwrap();

    println!("straight-line fit of 1/lambda_{{k+1,k+2}} over k in [2, {k_max}]:");
    println!(
        "  alpha (slope)    = {:.9}   [4/9 = {:.9}]",
        fit.alpha,
        4.0 / 9.0
    );
    println!(
        "  beta  (intercept) = {:.9}  [-1/9 = {:.9}]",
        fit.beta,
        -1.0 / 9.0
    );
    println!(
        "  residual range   = [{:+.6e}, {:+.6e}]",
        fit.min_residual, fit.max_residual
    );

    println!();
    println!(
        "{:>5} {:>14} {:>14} {:>12}",
        "k", "1/lambda", "alpha*k+beta", "residual"
    );
    for &(k, lambda) in data.iter().step_by((data.len() / 12).max(1)) {
        let inv = 1.0 / lambda;
        let line = fit.alpha * k as f64 + fit.beta;
        println!("{k:>5} {inv:>14.6} {line:>14.6} {:>+12.3e}", line - inv);
    }
}
