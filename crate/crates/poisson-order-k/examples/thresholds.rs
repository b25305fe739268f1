//! Solve the characteristic lambda thresholds per order and reproduce the
//! published table rows, including the closed-form values known for small k.
//!
//! ```bash
//! cargo run --release --example thresholds
//! ```

use poisson_order_k::roots::{threshold_set, verify_uniqueness};
use poisson_order_k::sweep::sweep;

fn main() {
    println!(
        "{:>5} {:>13} {:>13} {:>13} {:>13} {:>13}",
        "k", "r_k", "t_k", "lambda_k1k2", "9/(4k-1)", "4/(k+1)"
    );
    for ts in sweep(2, 10, 1e-12).unwrap() {
        println!(
            "{:>5} {:>13.9} {:>13.9} {:>13.9} {:>13.9} {:>13.9}",
            ts.k, ts.r_k, ts.t_k, ts.lambda_k1k2, ts.bound_sufficient, ts.bound_necessary
        );
    }

    println!();
    let ts = threshold_set(2, 1e-13).unwrap();
    println!("k=2 closed forms:");
    println!(
        "  t_2          = sqrt(5) - 1     = {:.12}",
        5f64.sqrt() - 1.0
    );
    println!("  solved t_2                     = {:.12}", ts.t_k);
    println!(
        "  lambda_{{3,4}} = 2(sqrt(7) - 2)  = {:.12}",
        2.0 * (7f64.sqrt() - 2.0)
    );
    println!(
        "  solved lambda_{{3,4}}            = {:.12}",
        ts.lambda_k1k2
    );

    println!();
    for k in [2, 10, 100] {
        println!(
            "unique positive root of p_(k+2) = p_(k+1) for k = {k}: {}",
            verify_uniqueness(k, 1000).unwrap()
        );
    }
}
