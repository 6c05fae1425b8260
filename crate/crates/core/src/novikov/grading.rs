use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{NovikovError, NovikovScalar, Q};

/// Grading data of a monotone target: `t` sits in degree `2·λ_E`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingContext {
    #[serde(with = "super::qserde")]
    monotonicity_constant: Q,
    #[serde(with = "super::qserde")]
    t_degree: Q,
}

impl GradingContext {
    pub fn new(monotonicity_constant: Q) -> Result<Self, NovikovError> {
        if !monotonicity_constant.is_positive() {
            return Err(NovikovError::BadMonotonicity);
        }
        let t_degree = &monotonicity_constant * Q::from_integer(2.into());
        Ok(GradingContext { monotonicity_constant, t_degree })
    }

    pub fn monotonicity_constant(&self) -> &Q {
        &self.monotonicity_constant
    }

    pub fn t_degree(&self) -> &Q {
        &self.t_degree
    }

    /// Degree of `t^e`.
    pub fn degree_of_exponent(&self, e: &super::Exponent) -> Q {
        &self.t_degree * Q::new((*e.numer()).into(), (*e.denom()).into())
    }

    pub fn degree(&self, a: &NovikovScalar) -> CohomologicalDegree {
        let mut found: Option<Q> = None;
        for (e, _) in a.terms() {
            let d = self.degree_of_exponent(e);
            match &found {
                None => found = Some(d),
                Some(prev) if *prev != d => return CohomologicalDegree::Mixed,
                Some(_) => {}
            }
        }
        CohomologicalDegree::Homogeneous(found.unwrap_or_else(Q::zero))
    }
}

impl Default for GradingContext {
    fn default() -> Self {
        GradingContext::new(Q::one()).expect("positive")
    }
}

/// Cohomological degree of a scalar; zero counts as degree 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohomologicalDegree {
    Homogeneous(Q),
    Mixed,
}

impl NovikovScalar {
    pub fn cohomological_degree(&self, ctx: &GradingContext) -> CohomologicalDegree {
        ctx.degree(self)
    }
}
