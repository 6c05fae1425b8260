//! Finite A∞-categories, bimodules, morphisms and functors, with exact
//! verifiers for their structure equations.
//!
//! Conventions: words are stored in written order `x_r, …, x_1` (the letter
//! `x_1` is applied first), degrees are cohomological, and every sign is the
//! one obtained by letting structure maps act from the right in the reduced
//! grading (see [`signs`]). Coefficients commute with everything; structure
//! constants must have even cohomological degree.

pub mod fixtures;
mod json;
mod lincomb;
mod module;
mod morphism;
pub mod signs;
mod structure;
mod verify;

pub use json::{
    AInfJson, BasisJson, BimoduleJson, FunctorEntryJson, FunctorJson, HomJson, ModuleEntryJson, MorphismJson, MuJson, SpaceJson,
    SCHEMA_VERSION,
};
pub use lincomb::LinComb;
pub use module::{BimoduleBuilder, BimoduleData, LeftModule, ModuleElement, ModuleKind, RightModule, SlotKey};
pub use morphism::{BimoduleMorphism, FunctorData};
pub(crate) use module::same_base;
pub use signs::{sigma, SignLedger};
pub use structure::{from_associative, AInfBuilder, AInfStructure, AssociativeTable, BasisId, HomElement, ObjectId};
pub use verify::{
    ainf_residual, bimodule_residual, functor_residual, module_words, morphism_residual, verify_ainf, verify_bimodule,
    verify_bimodule_morphism, verify_functor, VerifyReport, Violation, DEFAULT_BOUND,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AInfError {
    #[error("malformed structure: {0}")]
    MalformedStructure(String),
    #[error("multiplication table is not associative: {0}")]
    NotAssociative(String),
    #[error("index range {i}..={j} is out of range for {len} letters")]
    IndexOutOfRange { i: usize, j: usize, len: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[cfg(test)]
mod tests;
