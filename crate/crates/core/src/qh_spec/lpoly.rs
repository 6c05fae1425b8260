use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{common_lattice, QPoly, RatFunc, UPoly};
use crate::novikov::{Exponent, NovikovScalar, Q};

/// Univariate polynomial with exact Novikov coefficients, low degree first.
///
/// Serializes as the coefficient list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<NovikovScalar>", into = "Vec<NovikovScalar>")]
pub struct LambdaPoly {
    coeffs: Vec<NovikovScalar>,
}

impl LambdaPoly {
    pub fn new(mut coeffs: Vec<NovikovScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LambdaPoly { coeffs }
    }

    /// `x^n − a`.
    pub fn binomial(n: usize, a: NovikovScalar) -> Self {
        let mut c = vec![NovikovScalar::zero(); n + 1];
        c[0] = a.neg_ref();
        c[n] = NovikovScalar::one();
        Self::new(c)
    }

    /// `Π (x − t^r·θ_i)` over the roots `θ_i` of a monic `f ∈ ℚ[x]`.
    pub fn from_scaled_roots(f: &QPoly, r: Exponent) -> Self {
        let d = f.degree().unwrap_or(0);
        Self::new(
            (0..=d)
                .map(|j| NovikovScalar::monomial(f.coeff(j), r * Exponent::from_integer((d - j) as i64)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[NovikovScalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lattice(&self) -> u32 {
        common_lattice(self.coeffs.iter())
    }

    /// Image in `ℚ(s)[x]`, `s = t^{1/n}`.
    pub fn to_upoly(&self, n: u32) -> UPoly<RatFunc> {
        UPoly::new(self.coeffs.iter().map(|c| RatFunc::from_novikov(c, n).expect("exact coefficients on the lattice")).collect())
    }

    /// Inverse of [`LambdaPoly::to_upoly`] when every coefficient is a Laurent polynomial in `s`.
    pub fn from_upoly(p: &UPoly<RatFunc>, n: u32) -> Option<Self> {
        Some(Self::new(p.coeffs().iter().map(|c| c.to_novikov(n)).collect::<Option<Vec<_>>>()?))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.lattice().max(1) * o.lattice().max(1);
        Self::from_upoly(&self.to_upoly(n).mul(&o.to_upoly(n)), n).expect("product of Laurent polynomials")
    }

    /// Scales so that the leading coefficient is one; `None` if it is not a unit monomial.
    pub fn monic(&self) -> Option<Self> {
        let lead = self.coeffs.last()?;
        if lead.num_terms() != 1 {
            return None;
        }
        let (e, c) = lead.leading_term()?;
        let inv = NovikovScalar::monomial(Q::one() / c, -e);
        Some(Self::new(self.coeffs.iter().map(|a| a.mul_ref(&inv)).collect()))
    }

    /// `p(x) ↦ u^{deg}·p(x/u)`, multiplying every root by `u`.
    pub fn scale_roots(&self, u: &Q) -> Self {
        let d = self.degree().unwrap_or(0);
        Self::new(self.coeffs.iter().enumerate().map(|(j, c)| c.scale(&num_traits::pow(u.clone(), d - j))).collect())
    }

    /// Replaces `x` by `c·x`.
    pub fn substitute_scaled(&self, c: &Q) -> Self {
        let mut pw = Q::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.scale(&pw));
            pw *= c;
        }
        Self::new(out)
    }

    /// Text with variable `var`, highest degree first; the Novikov variable prints as `tvar`.
    pub fn display_in(&self, var: &str, tvar: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let coeff = coefficient_text(c, tvar);
                let mono = match j {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{j}"),
                };
                match (coeff.as_str(), mono.is_empty()) {
                    (_, true) => coeff,
                    ("1", false) => mono,
                    (_, false) => format!("{coeff}*{mono}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

fn coefficient_text(c: &NovikovScalar, tvar: &str) -> String {
    if let Some(v) = c.as_constant() {
        return if v.is_zero() { "0".into() } else if *v < Q::zero() { format!("({v})") } else { v.to_string() };
    }
    format!("({})", c.to_string().replace("t^(", &format!("{tvar}^(")))
}

impl From<Vec<NovikovScalar>> for LambdaPoly {
    fn from(c: Vec<NovikovScalar>) -> Self {
        Self::new(c)
    }
}

impl From<LambdaPoly> for Vec<NovikovScalar> {
    fn from(p: LambdaPoly) -> Self {
        p.coeffs
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x", "t"))
    }
}
