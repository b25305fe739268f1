use crate::error::{Error, Result};

/// Order and rate of a Poisson distribution of order `k`.
///
/// Every pmf evaluation is conditioned on a `(k, lambda)` pair. The order
/// must be a positive integer. The rate must be finite and non-negative;
/// `lambda = 0` is admitted because the degenerate limit (all mass at
/// `n = 0`) is well defined for tabulation, but the threshold solvers
/// never produce or accept it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    k: u32,
    lambda: f64,
}

impl Params {
    pub fn new(k: u32, lambda: f64) -> Result<Self> {
        if k < 1 {
            return Err(Error::OrderTooSmall { got: k, min: 1 });
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidLambda(lambda));
        }
        Ok(Self { k, lambda })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// k(k+1)/2, the mean of the distribution divided by lambda.
    pub fn kappa(&self) -> f64 {
        let k = self.k as u64;
        (k * (k + 1) / 2) as f64
    }
}
