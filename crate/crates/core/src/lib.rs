//! Exact local data for genus-2 Siegel modular forms obtained from the
//! symmetric cube of a GL(2) newform, or from a newform tensored with the
//! induction of a Hecke character of an imaginary quadratic field.
//!
//! Euler factors are kept in arithmetic normalization with exact rational
//! coefficients; every functorial operation goes through power sums.

pub mod archimedean;
pub mod arith;
pub mod cli;
pub mod error;
pub mod heckechar;
pub mod localfactor;
pub mod modform;
pub mod predictor;

pub use error::{Error, Result};
pub use localfactor::LocalFactor;
