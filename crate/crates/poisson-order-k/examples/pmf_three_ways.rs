//! Evaluate the scaled pmf by all three routes and cross-check them.
//!
//! ```bash
//! cargo run --release --example pmf_three_ways
//! ```

use poisson_order_k::pmf::{normalization_check, pmf_bruteforce, pmf_km_sum, pmf_recurrence_table};
use poisson_order_k::Params;

fn main() {
    let params = Params::new(3, 1.0).unwrap();
    let n_max = 12;
    let table = pmf_recurrence_table(&params, n_max);

    println!(
        "scaled pmf p_n for k = {}, lambda = {}",
        params.k(),
        params.lambda()
    );
    println!(
        "{:>3} {:>18} {:>18} {:>18} {:>10}",
        "n", "recurrence", "km_sum", "brute_force", "spread"
    );
    for n in 0..=n_max {
        let rec = table.values()[n as usize];
        let km = pmf_km_sum(&params, n);
        let brute = pmf_bruteforce(&params, n).unwrap();
        let spread = (rec - km).abs().max((rec - brute).abs()) / rec.max(1.0);
        println!("{n:>3} {rec:>18.12} {km:>18.12} {brute:>18.12} {spread:>10.1e}");
    }

    // the scaled table sums to e^(k lambda); equivalently the pmf proper
    // sums to 1, and the truncation point for a 1e-9 defect is:
    let norm = normalization_check(&params, 1e-9).unwrap();
    println!();
    println!(
        "truncation: first N with defect < 1e-9 is N = {} (defect {:.2e})",
        norm.n, norm.defect
    );

    // mean of the distribution is kappa * lambda with kappa = k(k+1)/2
    let deep = pmf_recurrence_table(&params, norm.n);
    let scale = (-(params.k() as f64) * params.lambda()).exp();
    let mean: f64 = deep
        .values()
        .iter()
        .enumerate()
        .map(|(n, &p)| n as f64 * scale * p)
        .sum();
    println!(
        "mean check: sum n f_k(n) = {:.9} vs kappa*lambda = {:.9}",
        mean,
        params.kappa() * params.lambda()
    );
}
