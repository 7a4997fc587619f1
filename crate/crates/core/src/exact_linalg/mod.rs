//! Exact integer and rational matrix arithmetic.
//!
//! Everything here is arbitrary precision; there is no floating point in the
//! crate.

mod hermite;
mod int_matrix;
pub mod kernel;
mod rat_matrix;
mod smith;

pub use hermite::{hermite_normal_form, HermiteForm};
pub use int_matrix::IntMatrix;
pub use kernel::{rational_kernel, stack_and_common_kernel, EchelonBasis};
pub use rat_matrix::{format_rational, int, rat, RatMatrix, Rational};
pub use smith::{smith_normal_form, SmithForm};
