//! Probe the conjectured sufficient bound 9/(4k-1): just below it the pmf
//! decreases strictly for every inspected n >= k, while the slightly larger
//! 9.05/(4k-1) always breaks the decrease.
//!
//! ```bash
//! cargo run --release --example conjecture_scan
//! ```

use poisson_order_k::sweep::sufficient_bound_scan;

fn main() {
    let entries = sufficient_bound_scan(2, 15, 6).unwrap();
    println!(
        "{:>4} {:>13} {:>10} {:>13} {:>10} {:>7}",
        "k", "just_below", "decreases", "9.05/(4k-1)", "violates", "pass"
    );
    for e in &entries {
        println!(
            "{:>4} {:>13.9} {:>10} {:>13.9} {:>10} {:>7}",
            e.k,
            e.lambda_low,
            e.decreasing_at_low,
            e.lambda_high,
            e.violation_at_high,
            e.passed()
        );
    }
    let all = entries.iter().all(|e| e.passed());
    println!();
    println!("all orders consistent with the conjectured bound: {all}");
}
