//! Scan every finite difference on the first block n in [1, k] and confirm
//! they are all strictly positive, with the recursion and the closed form
//! agreeing cell by cell.
//!
//! ```bash
//! cargo run --release --example finite_differences
//! ```

use poisson_order_k::differences::absolute_monotonicity_report;
use poisson_order_k::Params;

fn main() {
    let params = Params::new(10, 0.3).unwrap();
    let report = absolute_monotonicity_report(&params).unwrap();

    println!(
        "finite differences Delta_m(n), k = {}, lambda = {}",
        params.k(),
        params.lambda()
    );
    println!(
        "{:>3} {:>3} {:>16} {:>16} {:>9}",
        "m", "n", "recursive", "closed", "rel_err"
    );
    for cell in &report.cells {
        println!(
            "{:>3} {:>3} {:>16.9e} {:>16.9e} {:>9.1e}",
            cell.m, cell.n, cell.recursive, cell.closed, cell.rel_err
        );
    }
    println!();
    println!("cells: {}", report.cells.len());
    println!("all strictly positive: {}", report.all_positive);
    println!("max relative discrepancy: {:.2e}", report.max_rel_err);
}
