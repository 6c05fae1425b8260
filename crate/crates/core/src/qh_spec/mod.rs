//! Quantum cohomology of `ℙ^m` and of `𝒪(−k) → ℙ^m`: presentations, the `c1` operator and
//! its spectrum, the symplectic cohomology quotient `QH*/ker r^n`, and the comparison with
//! the Landau–Ginzburg side.
//!
//! Coefficients are exact. Polynomials in `λ` or `w` have Novikov coefficients and are
//! handled in `ℚ(s)[x]` with `s = t^{1/N}`; spectra are compared as polynomial identities.

mod compare;
mod lpoly;
mod presentation;
mod report;
mod sh;
mod spectrum;

#[cfg(test)]
mod tests;

pub use compare::{
    critical_value_polynomial, generation_report, jacobian_comparison, rescale_critical_values, ComparisonReport, GenerationEntry,
    GenerationReport, MismatchReport, INCONCLUSIVE, SPLIT_GENERATED,
};
pub use lpoly::LambdaPoly;
pub use presentation::{c1_operator, presentation, C1Operator, Generator, QuantumPresentation, Ring};
pub use report::{default_specializations, run_pipeline, GenerationRow, QhPipeline, QhReport, QH_REPORT_VERSION};
pub use sh::{sh_quotient, ShQuotient};
pub use spectrum::{spectrum, SpectrumDescriptor, SpectrumFactor};

use crate::toric_lg::ToricError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QhError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("symplectic cohomology is only defined here for the O(-k) -> P^m family")]
    NotABundleFamily,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("comparison failed: {}", .0.failures.join("; "))]
    Mismatch(Box<MismatchReport>),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error("malformed JSON: {0}")]
    Json(String),
}
