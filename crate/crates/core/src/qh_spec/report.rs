use serde::{Deserialize, Serialize};

use super::{
    c1_operator, critical_value_polynomial, generation_report, jacobian_comparison, presentation, sh_quotient, spectrum, ComparisonReport,
    GenerationReport, QhError, QuantumPresentation, ShQuotient, SpectrumDescriptor,
};
use crate::novikov::{q, Q};
use crate::toric_lg::{critical_points, critical_values, family_polytope, jacobian_rank, superpotential, CriticalSet, CriticalValue, Family, JacobianData};

pub const QH_REPORT_VERSION: u32 = 1;

/// One row of the generation table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationRow {
    pub eigenvalue_factor: String,
    pub summand_dim: usize,
    pub matched_crit_point: Option<usize>,
    pub verdict: String,
}

/// The whole comparison for one family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QhReport {
    pub family: String,
    pub m: usize,
    pub k: Option<usize>,
    pub qh_rank: usize,
    pub sh_rank: Option<usize>,
    pub zero_block_dim: usize,
    pub char_poly: String,
    pub sh_relation: Option<String>,
    pub jacobian_rank: usize,
    pub spectrum_match: bool,
    pub generation: Vec<GenerationRow>,
}

impl QhReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, QhError> {
        serde_json::from_str(s).map_err(|e| QhError::Json(e.to_string()))
    }
}

/// Every intermediate object of the pipeline.
#[derive(Clone, Debug)]
pub struct QhPipeline {
    pub presentation: QuantumPresentation,
    pub spectrum: SpectrumDescriptor,
    pub sh: Option<ShQuotient>,
    pub jacobian: JacobianData,
    pub critical: CriticalSet,
    pub values: Vec<CriticalValue>,
    /// `Ok` or the mismatch, for bundle families.
    pub comparison: Option<Result<ComparisonReport, QhError>>,
    pub generation: GenerationReport,
}

/// Default specializations `s = t^{1/N}` for the Jacobian rank.
pub fn default_specializations() -> Vec<Q> {
    vec![q(2), q(3)]
}

/// Runs presentation, spectrum, `SH*`, the Jacobian comparison and the generation report.
///
/// On `ℙ^m` the variable `T` of the presentation is identified with `t¹`, the coefficient of
/// the last term of the standard superpotential.
pub fn run_pipeline(family: Family, specializations: &[Q]) -> Result<QhPipeline, QhError> {
    let presentation = presentation(family)?;
    let op = c1_operator(&presentation);
    let spectrum = spectrum(&op);
    let w = superpotential(&family_polytope(family)?);
    let jacobian = jacobian_rank(&w, specializations)?;
    let critical = critical_points(&w, None)?;
    let values = critical_values(&w, &critical.points);
    let sh = match family {
        Family::NegativeLineBundle { .. } => Some(sh_quotient(&presentation, &op)?),
        Family::Projective { .. } => None,
    };
    let comparison = sh.as_ref().map(|s| jacobian_comparison(&s.presentation, &jacobian, &critical.points, &values));
    let generation = generation_report(&spectrum, &values);
    Ok(QhPipeline { presentation, spectrum, sh, jacobian, critical, values, comparison, generation })
}

impl QhPipeline {
    pub fn spectrum_match(&self) -> bool {
        match &self.comparison {
            Some(Ok(r)) => r.spectrum_match,
            Some(Err(QhError::Mismatch(m))) => m.report.spectrum_match,
            Some(Err(_)) => false,
            None => critical_value_polynomial(&self.values).as_ref() == Some(&self.spectrum.char_poly),
        }
    }

    pub fn report(&self) -> QhReport {
        let (name, m, k) = match self.presentation.family {
            Family::Projective { m } => ("projective", m, None),
            Family::NegativeLineBundle { m, k } => ("bundle", m, Some(k)),
        };
        QhReport {
            family: name.into(),
            m,
            k,
            qh_rank: self.presentation.rank(),
            sh_rank: self.sh.as_ref().map(|s| s.presentation.rank()),
            zero_block_dim: self.spectrum.zero_block_dim,
            char_poly: self.spectrum.char_poly_text.clone(),
            sh_relation: self.sh.as_ref().map(|s| s.presentation.relation_text()),
            jacobian_rank: self.jacobian.rank,
            spectrum_match: self.spectrum_match(),
            generation: self
                .generation
                .entries
                .iter()
                .map(|e| GenerationRow {
                    eigenvalue_factor: e.eigenvalue_factor.clone(),
                    summand_dim: e.summand_dim,
                    matched_crit_point: e.matched_crit_point,
                    verdict: e.verdict.clone(),
                })
                .collect(),
        }
    }
}
