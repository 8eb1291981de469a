//! Exact arithmetic substrate: arbitrary-precision rationals, quadratic
//! field elements a + b*sqrt(d), univariate polynomials and rational
//! functions over them, integer matrices with fraction-free determinants,
//! and the Kronecker symbol.

pub mod field;
pub mod kronecker;
pub mod matrix;
pub mod poly;
pub mod quad;
pub mod ratfunc;

pub use field::{Field, Rat};
pub use kronecker::kronecker_symbol;
pub use matrix::IntMatrix;
pub use poly::{Factor, Factorization, Poly};
pub use quad::Quad;
pub use ratfunc::RatFunc;

use num::BigInt;
use num::BigRational;

/// Convenience: a rational from an integer pair.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience: a rational from an integer.
pub fn rint(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}
