use serde::{Deserialize, Serialize};
use std::fmt;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::groebner::{MPoly, Mono};
use super::polytope::{Family, MomentPolytope};
use super::ToricError;
use crate::linalg::{common_lattice, RatFunc};
use crate::novikov::{Exponent, NovikovScalar, Q};

/// One monomial `coeff·z^exponent`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub exponent: Vec<i64>,
    pub coeff: NovikovScalar,
}

/// `W(z) = Σ t^{−λ_i} z^{e_i}`, one term per facet, together with its polytope.
#[derive(Clone, Debug, PartialEq)]
pub struct Superpotential {
    polytope: MomentPolytope,
    terms: Vec<Term>,
}

/// The superpotential of a moment polytope.
pub fn superpotential(p: &MomentPolytope) -> Superpotential {
    let terms = p
        .facets()
        .iter()
        .map(|f| Term { exponent: f.normal.clone(), coeff: NovikovScalar::t_pow(to_exponent(&-f.constant.clone())) })
        .collect();
    Superpotential { polytope: p.clone(), terms }
}

pub(crate) fn to_exponent(x: &Q) -> Exponent {
    Exponent::new(x.numer().to_i64().expect("exponent fits i64"), x.denom().to_i64().expect("exponent fits i64"))
}

impl Superpotential {
    /// A superpotential with arbitrary terms over the given polytope; used for negative
    /// controls and hand-made potentials.
    pub fn from_terms(polytope: MomentPolytope, terms: Vec<Term>) -> Result<Self, ToricError> {
        if terms.iter().any(|t| t.exponent.len() != polytope.dim() || !t.coeff.is_exact()) {
            return Err(ToricError::InvalidPolytope("terms must be exact and live in Z^n".into()));
        }
        Ok(Superpotential { polytope, terms })
    }

    pub fn nvars(&self) -> usize {
        self.polytope.dim()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn polytope(&self) -> &MomentPolytope {
        &self.polytope
    }

    /// The shipped family this potential belongs to, if its terms are the family's.
    pub fn family(&self) -> Option<Family> {
        let fam = self.polytope.recognize()?;
        (*self == superpotential(&self.polytope)).then_some(fam)
    }

    /// Lattice `N` of the coefficient exponents; specializations are values of `s = t^{1/N}`.
    pub fn lattice(&self) -> u32 {
        common_lattice(self.terms.iter().map(|t| &t.coeff))
    }

    /// `z_i ∂W/∂z_i` as a list of terms.
    pub fn log_derivative(&self, i: usize) -> Vec<Term> {
        self.terms
            .iter()
            .filter(|t| t.exponent[i] != 0)
            .map(|t| Term { exponent: t.exponent.clone(), coeff: t.coeff.scale(&crate::novikov::q(t.exponent[i])) })
            .collect()
    }

    /// The logarithmic derivatives at `s = t^{1/N}`, multiplied by monomials to become polynomials
    /// in `z_1..z_n`, followed by `u·z_1⋯z_n − 1` in the extra variable `u`.
    pub fn specialized_system(&self, s: &Q) -> Result<Vec<MPoly>, ToricError> {
        let n = self.nvars();
        let nv = n + 1;
        let lattice = self.lattice();
        let mut out = Vec::new();
        for i in 0..n {
            let d = self.log_derivative(i);
            if d.is_empty() {
                continue;
            }
            let lows: Vec<i64> = (0..n).map(|j| d.iter().map(|t| t.exponent[j]).min().unwrap_or(0).min(0)).collect();
            let mut terms = Vec::new();
            for t in &d {
                let c = RatFunc::from_novikov(&t.coeff, lattice)
                    .map_err(|e| ToricError::BadSpecialization(e.to_string()))?
                    .eval(s)
                    .ok_or_else(|| ToricError::BadSpecialization(format!("pole at s = {s}")))?;
                let mut e: Vec<u32> = (0..n).map(|j| (t.exponent[j] - lows[j]) as u32).collect();
                e.push(0);
                terms.push((Mono(e), c));
            }
            out.push(MPoly::new(nv, terms));
        }
        let mut inv = vec![1u32; n];
        inv.push(1);
        out.push(MPoly::new(nv, vec![(Mono(inv), Q::from_integer(1.into())), (Mono::one(nv), Q::from_integer((-1).into()))]));
        Ok(out)
    }

    /// `W(z)` at numeric `z` and real `t > 0`.
    pub fn eval_complex(&self, z: &[Complex64], t: f64) -> Complex64 {
        self.terms.iter().map(|term| monomial_value(&term.exponent, z) * term.coeff.eval_f64(t)).sum()
    }

    /// `z_i ∂W/∂z_i` at numeric `z`.
    pub fn log_gradient_complex(&self, z: &[Complex64], t: f64) -> Vec<Complex64> {
        (0..self.nvars())
            .map(|i| self.log_derivative(i).iter().map(|term| monomial_value(&term.exponent, z) * term.coeff.eval_f64(t)).sum())
            .collect()
    }

    /// Jacobian of the logarithmic gradient with respect to `z`.
    pub fn log_hessian_complex(&self, z: &[Complex64], t: f64) -> Vec<Vec<Complex64>> {
        let n = self.nvars();
        let mut h = vec![vec![Complex64::zero(); n]; n];
        for term in &self.terms {
            let v = monomial_value(&term.exponent, z) * term.coeff.eval_f64(t);
            for i in 0..n {
                for j in 0..n {
                    let c = (term.exponent[i] * term.exponent[j]) as f64;
                    if c != 0.0 {
                        h[i][j] += v * c / z[j];
                    }
                }
            }
        }
        h
    }
}

pub(crate) fn monomial_value(e: &[i64], z: &[Complex64]) -> Complex64 {
    e.iter().zip(z).fold(Complex64::new(1.0, 0.0), |acc, (&k, &x)| acc * x.powi(k as i32))
}

impl fmt::Display for Superpotential {
    /// Terms as `(coefficient)*z1^a*z2^b`, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mono: Vec<String> = t
                    .exponent
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(i, &k)| if k == 1 { format!("z{}", i + 1) } else { format!("z{}^{}", i + 1, k) })
                    .collect();
                let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
                format!("({})*{}", t.coeff, mono)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
