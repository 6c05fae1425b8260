//! Exact linear algebra over `ℚ` and over the rational function field `ℚ(s)`,
//! `s = t^{1/N}`, which is where Novikov-valued matrices are eliminated.

mod algebraic;
mod field;
mod matrix;
mod qpoly;
mod ratfunc;
mod upoly;

pub use algebraic::{complex_roots, inv_mod, mul_mod, mult_char_poly, parse_qpoly, pow_mod, qpoly_text, AlgebraicNumber};
pub use field::Field;
pub use matrix::{sparse_rank, Matrix};
pub use qpoly::QPoly;
pub use ratfunc::{common_lattice, RatFunc};
pub use upoly::{char_poly, UPoly};
