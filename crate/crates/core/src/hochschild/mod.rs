//! Cyclic bar complexes, Hochschild homology, the maps induced on them, the
//! two-sided tensor complex, and the telescope complex.
//!
//! Complexes are cohomological (`d` raises degree by one) and their matrices
//! have Laurent-polynomial entries in `s = t^{1/N}`; ranks are taken over the
//! fraction field `ℚ(s)`. Bar and tensor complexes are truncated at a word
//! length bound. Words of that top length have no incoming boundaries from
//! longer words, so reports flag the degrees they occupy as boundary slack.

mod bar;
mod change;
mod complex;
mod telescope;
mod tensor;

pub use bar::{bar_differential, cc_of_morphism, BarComplex, BarReport, BarWord, CcMap, DEFAULT_LENGTH_BOUND};
pub use change::{change_of_rings, ChangeOfRings};
pub use complex::{exact_rank, ChainComplex, ChainComplexJson, ChainMap, Columns, DegreeJson, EntryJson, COMPLEX_SCHEMA_VERSION};
pub use telescope::{telescope, telescope_filtration_report, FiltrationReport, TelescopeData, TelescopeJson, TruncationRanks};
pub use tensor::{reorder_iso, reorder_iso_with, tensor_complex, ReorderIso, ReorderSign, TensorComplex, TensorWord};

use crate::graded_ainf::AInfError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HochschildError {
    #[error("malformed generator: {0}")]
    MalformedGenerator(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("d∘d ≠ 0 starting in degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("induced map does not intertwine differentials ({nonzero} nonzero residual entries)")]
    NotAChainMap { nonzero: usize },
    #[error("connecting map out of stage {stage} is not a chain map")]
    ConnectingMapNotChainMap { stage: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
}

impl From<AInfError> for HochschildError {
    fn from(e: AInfError) -> Self {
        HochschildError::MalformedInput(e.to_string())
    }
}
