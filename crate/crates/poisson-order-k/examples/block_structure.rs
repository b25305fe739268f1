//! Classify the shape of the pmf on the second block [k+1, 2k] and the
//! tail: strictly increasing on [1, k] always, but past a lambda threshold
//! a local maximum appears inside the second block.
//!
//! ```bash
//! cargo run --release --example block_structure
//! ```

use poisson_order_k::structure::{block_first_difference, structure_report};
use poisson_order_k::Params;

fn main() {
    let k = 10;
    for lambda in [0.2, 0.3] {
        let params = Params::new(k, lambda).unwrap();
        let report = structure_report(&params, 6 * k).unwrap();
        println!("k = {k}, lambda = {lambda}:");
        println!(
            "  strictly decreasing on [k, 2k]: {}",
            report.decreasing_on_block
        );
        println!(
            "  concave on [k+3, 2k]:           {}",
            report.concave_on_block
        );
        println!(
            "  decreasing tail verified to:    {}",
            report.decreasing_tail_to
        );
        match report.first_violation {
            Some(n) => println!("  first violation: p_{} >= p_{n}", n + 1),
            None => println!("  no violation up to the cap"),
        }
        println!();
    }

    // the same first difference, via the block closed form; its sign flips
    // exactly at the published root of p_5 - p_4 for k = 3
    println!("p_5 - p_4 for k = 3 near its root:");
    for lambda in [0.8, 0.82187688, 0.84] {
        let d = block_first_difference(&Params::new(3, lambda).unwrap(), 5).unwrap();
        println!("  lambda = {lambda:<10}: {d:+.3e}");
    }
}
