use serde::{Deserialize, Serialize};

use super::critical::{critical_values, nondisplaceability_report, CriticalPoint, CriticalSet, CriticalValue, NondisplaceabilityFlag};
use super::polytope::Family;
use super::potential::Superpotential;
use super::ToricError;

pub const CRITICAL_REPORT_VERSION: u32 = 1;

/// Critical points, values and Floer flags of one superpotential.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalReport {
    pub version: u32,
    pub superpotential: String,
    pub family: Option<Family>,
    pub branch: String,
    pub exact: bool,
    pub filtered_out: usize,
    pub unconverged_starts: usize,
    pub starts: usize,
    pub valuation_filter_applied: bool,
    pub points: Vec<CriticalPoint>,
    pub values: Vec<CriticalValue>,
    pub flags: Vec<NondisplaceabilityFlag>,
}

impl CriticalReport {
    pub fn build(w: &Superpotential, set: CriticalSet) -> Self {
        let values = critical_values(w, &set.points);
        let flags = nondisplaceability_report(w, &set.points);
        CriticalReport {
            version: CRITICAL_REPORT_VERSION,
            superpotential: w.to_string(),
            family: w.family(),
            exact: set.branch == "closed-form",
            branch: set.branch,
            filtered_out: set.filtered_out,
            unconverged_starts: set.unconverged_starts,
            starts: set.starts,
            valuation_filter_applied: set.valuation_filter_applied,
            points: set.points,
            values,
            flags,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, ToricError> {
        serde_json::from_str(s).map_err(|e| ToricError::Json(e.to_string()))
    }
}
