use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::groebner::{groebner_basis, standard_monomials, GroebnerOptions};
use super::potential::Superpotential;
use super::ToricError;
use crate::novikov::{qserde, Q};

/// Quotient dimension at one specialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianSpecialization {
    /// Value of `s = t^{1/N}`.
    #[serde(with = "qserde")]
    pub s: Q,
    /// `z_i ∂W/∂z_i` cleared to polynomials, then `u·z_1⋯z_n − 1`.
    pub generators: Vec<String>,
    pub groebner_basis_size: usize,
    pub rank: usize,
    /// Standard monomials spanning the quotient.
    pub basis: Vec<String>,
}

/// `dim Jac(W)` computed at several specializations of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianData {
    /// `N` with `s = t^{1/N}`.
    pub lattice: u32,
    pub specializations: Vec<JacobianSpecialization>,
    /// The common rank, or the largest one when they disagree.
    pub rank: usize,
    pub consistent: bool,
    pub warning: Option<String>,
}

impl JacobianData {
    /// Standard-monomial basis at the first specialization.
    pub fn basis(&self) -> &[String] {
        self.specializations.first().map(|s| s.basis.as_slice()).unwrap_or(&[])
    }
}

/// Variable names of the specialized system: `z1..zn, u`.
pub fn variable_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("z{i}")).chain(std::iter::once("u".to_string())).collect()
}

/// Rank of `Λ[z^±]/(∂W)` via Gröbner bases of the system specialized at each `s`.
///
/// The torus is realized as `ℚ[z_1..z_n, u]/(u·z_1⋯z_n − 1)`.
pub fn jacobian_rank(w: &Superpotential, specializations: &[Q]) -> Result<JacobianData, ToricError> {
    let mut distinct: Vec<&Q> = Vec::new();
    for s in specializations {
        if s.is_zero() {
            return Err(ToricError::BadSpecialization("specializations must be nonzero".into()));
        }
        if !distinct.contains(&s) {
            distinct.push(s);
        }
    }
    if distinct.len() < 2 {
        return Err(ToricError::BadSpecialization("need at least 2 distinct specializations".into()));
    }
    let names = variable_names(w.nvars());
    let mut out = Vec::new();
    for s in distinct {
        let system = w.specialized_system(s)?;
        let gb = groebner_basis(&system, GroebnerOptions { units_are_invertible: true });
        let std = standard_monomials(&gb, names.len()).ok_or_else(|| ToricError::NonZeroDimensionalIdeal { s: s.to_string() })?;
        out.push(JacobianSpecialization {
            s: s.clone(),
            generators: system.iter().map(|p| p.display(&names)).collect(),
            groebner_basis_size: gb.len(),
            rank: std.len(),
            basis: std.iter().map(|m| m.display(&names)).collect(),
        });
    }
    let rank = out.iter().map(|s| s.rank).max().unwrap_or(0);
    let consistent = out.iter().all(|s| s.rank == rank);
    let warning = (!consistent).then(|| {
        format!("ranks differ across specializations: {:?}", out.iter().map(|s| (s.s.to_string(), s.rank)).collect::<Vec<_>>())
    });
    Ok(JacobianData { lattice: w.lattice(), specializations: out, rank, consistent, warning })
}
