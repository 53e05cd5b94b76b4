//! Exact computation and multi-route verification of Fine's divisor-class
//! functions and the signed representation counts of the indefinite form
//! `Q(k, l) = p(k^2 - l^2)/2 + p(k + l)/2 - l*r`.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: truncated integer power series and the Fine product builder.
//! - [`divisor`]: `D_{r,m}(n)`, `E_r(n; m)` and the divisor-side coefficients.
//! - [`quad_form`]: cone enumeration, signed series, quadruple counts and
//!   the two-variable product/sum expansion.
//! - [`verify`]: reports comparing the independent routes over ranges.
//! - [`cli`]: the `fine-arith` command-line front end.

pub mod cli;
pub mod divisor;
pub mod error;
pub mod params;
pub mod quad_form;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use params::{FineParams, Level};
pub use series::{PowerSeries, ProductFactor};
