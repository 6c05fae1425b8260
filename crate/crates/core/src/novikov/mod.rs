//! Exact arithmetic in the Novikov field.
//!
//! Elements are finite sums `Σ a_i t^{n_i}` with rational coefficients and
//! rational exponents living on a lattice `(1/N)ℤ`. Infinite series are
//! carried as a finite head plus an explicit truncation marker `O(t^r)`.

mod grading;
pub mod qserde;
mod random;
mod scalar;
mod text;

pub use grading::{CohomologicalDegree, GradingContext};
pub use random::random_scalar;
pub use scalar::{Exponent, NovikovScalar, Subring, Truncation, Valuation};
pub use text::ParseScalarError;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational coefficient.
pub type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn q_frac(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NovikovError {
    #[error("division by zero in the Novikov field")]
    ZeroDivision,
    #[error("exponent {0} does not lie on the lattice (1/{1})Z")]
    OffLattice(Exponent, u32),
    #[error("lattice denominator must be positive")]
    BadLattice,
    #[error("monotonicity constant must be positive")]
    BadMonotonicity,
    #[error("operation needs an exact (untruncated) scalar")]
    Truncated,
}
