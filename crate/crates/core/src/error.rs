use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(&'static str),

    #[error("exact value of C({n}, {k}) does not fit in 128 bits")]
    Overflow { n: u32, k: u32 },

    #[error("root finder did not converge for degree {degree} after {iterations} iterations")]
    RootFinding { degree: usize, iterations: usize },

    #[error("filter of order {m} failed validation: residual {residual:e} above {tolerance:e}")]
    FilterConstruction { m: u32, residual: f64, tolerance: f64 },

    #[error("product at omega = {omega} needs depth {needed} but max_depth is {max_depth}")]
    Truncation { omega: f64, needed: u32, max_depth: u32 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("integral not finite: {0}")]
    NotIntegrable(&'static str),

    #[error("non-finite integrand value at x = {at}")]
    NonFinite { at: f64 },

    #[error("decay fit failed: {0}")]
    DecayFit(&'static str),
}
