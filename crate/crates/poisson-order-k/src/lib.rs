//! Scaled probability mass function of the Poisson distribution of order k.
//!
//! The Poisson distribution of order k is the distribution of
//! N = sum_{i=1..k} i N_i with N_i iid Poisson(lambda). Throughout, the
//! crate works with the scaled pmf p_n = h_k(n; lambda) =
//! e^(k lambda) f_k(n; lambda), a degree-n polynomial in lambda with
//! non-negative coefficients.
//!
//! What lives where:
//!
//! * [`pmf`] — three independent evaluators (composition-sum brute force,
//!   the k-term recurrence, the Kostadinova-Minkova combinatorial sums),
//!   plus normalization scans;
//! * [`differences`] — finite differences Delta_m(n), their positive
//!   closed form on the first block n in [1, k], and the scan showing all
//!   of them are strictly positive there;
//! * [`structure`] — monotone-decrease and concavity classification of the
//!   second block n in [k+1, 2k] and the tail n >= k;
//! * [`roots`] — the characteristic thresholds r_k, t_k and
//!   lambda_{k+1,k+2} (the conjectured supremum for strict tail decrease),
//!   with the analytic bounds 9/(4k-1) and 4/(k+1);
//! * [`sweep`] — threshold sweeps over k, the straight-line fit to
//!   1/lambda_{k+1,k+2}, and the sufficient-bound scan;
//! * [`cli`] — the command implementations behind the `poisson-order-k`
//!   binary.
//!
//! Everything is a pure function of its inputs and safe to call from many
//! threads; tables are immutable once built.
//!
//! ```
//! use poisson_order_k::{pmf, roots, Params};
//!
//! let params = Params::new(2, 1.0).unwrap();
//! let table = pmf::pmf_recurrence_table(&params, 4);
//! assert!((table.values()[2] - 1.5).abs() < 1e-15);
//!
//! let ts = roots::threshold_set(2, 1e-12).unwrap();
//! assert!((ts.lambda_k1k2 - 2.0 * (7f64.sqrt() - 2.0)).abs() < 1e-10);
//! ```
//!
//! Runnable walkthroughs live in `examples/`; see the README for the list.

pub mod cli;
mod dd;
pub mod differences;
mod error;
mod params;
pub mod pmf;
pub mod roots;
pub mod structure;
pub mod sweep;

pub use error::{Error, Result};
pub use params::Params;
pub use pmf::{EvalMethod, Normalization, ScaledPmfTable};
pub use roots::ThresholdSet;
pub use structure::StructureReport;
pub use sweep::{BoundScanEntry, FitResult};
