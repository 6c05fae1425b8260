//! Toric Landau–Ginzburg models: moment polytopes, superpotentials
//! `W = Σ t^{−λ_i} z^{e_i}`, their critical points and values, and Jacobian ring ranks.
//!
//! The shipped families (`ℙ^m` and `𝒪(−k) → ℙ^m`) have exact closed-form critical points
//! with algebraic coefficients. Other potentials go through a seeded numerical branch whose
//! output is flagged as non-exact. Jacobian ranks come from a Gröbner basis computation over
//! `ℚ` at rational specializations of `t`.

mod critical;
pub mod groebner;
mod jacobian;
mod polytope;
mod potential;
mod report;

#[cfg(test)]
mod tests;

pub use critical::{
    critical_points, critical_values, exact_residual_vanishes, nondisplaceability_report, numerical_critical_points, Coordinate,
    CriticalPoint, CriticalSet, CriticalValue, ExactPoint, NondisplaceabilityFlag, NumericOptions, NumericPoint, DEDUP_RADIUS,
    RESIDUAL_TOLERANCE,
};
pub use jacobian::{jacobian_rank, variable_names, JacobianData, JacobianSpecialization};
pub use polytope::{family_polytope, DelzantCheck, Facet, Family, MomentPolytope};
pub use potential::{superpotential, Superpotential, Term};
pub use report::{CriticalReport, CRITICAL_REPORT_VERSION};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ToricError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("invalid point: {0}")]
    BadPoint(String),
    #[error("bad specialization: {0}")]
    BadSpecialization(String),
    #[error("potential outside the shipped families needs a numerical specialization of t and a seed")]
    NeedsSpecialization,
    #[error("numerical branch: {unconverged} of {starts} starts did not converge")]
    NumericalNonconvergence { unconverged: usize, starts: usize },
    #[error("the Jacobian ideal is not zero-dimensional at s = {s}")]
    NonZeroDimensionalIdeal { s: String },
    #[error("malformed JSON: {0}")]
    Json(String),
}
