//! Exact truncated series: power series in one variable with scalar or
//! Laurent coefficients, sparse Laurent polynomials on a window, and
//! bivariate polynomials truncated by total degree.

mod bseries;
mod coeff;
mod lseries;
mod pseries;
mod scalar;

pub use bseries::BSeries;
pub use coeff::Coeff;
pub use lseries::{LSeries, Window};
pub use pseries::{binomial_series, compose, exp_series, log1p_series, Series};
pub use scalar::{int, parse_rat, rat, rat_pow, ParseScalarError, Rational, Scalar};

/// Power series with scalar coefficients.
pub type PSeries = Series<Scalar>;

/// Power series in a fiber variable whose coefficients are Laurent
/// polynomials in ζ.
pub type MSeries = Series<LSeries>;
