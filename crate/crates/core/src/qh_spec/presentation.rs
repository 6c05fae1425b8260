use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{LambdaPoly, QhError};
use crate::linalg::{Matrix, RatFunc, UPoly};
use crate::novikov::{q, Exponent, NovikovScalar};
use crate::toric_lg::Family;

/// Which ring a presentation describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ring {
    QuantumCohomology,
    SymplecticCohomology,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub symbol: String,
    pub degree: i64,
}

/// `Λ[w]/(relation)` with its monomial basis `{1, w, …, w^{deg − 1}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumPresentation {
    pub family: Family,
    pub ring: Ring,
    pub generators: Vec<Generator>,
    /// Monic relations; the shipped presentations have exactly one.
    pub relations: Vec<LambdaPoly>,
    pub basis: Vec<String>,
    /// Name printed for the Novikov variable: `T` for `ℙ^m`, `t` for the bundles.
    pub novikov_variable: String,
    /// False for bundle relations built outside the window `1 ≤ k ≤ m/2`.
    pub in_stated_window: bool,
}

fn basis_names(rank: usize) -> Vec<String> {
    (0..rank)
        .map(|j| match j {
            0 => "1".to_string(),
            1 => "w".to_string(),
            _ => format!("w^{j}"),
        })
        .collect()
}

impl QuantumPresentation {
    fn univariate(family: Family, ring: Ring, relation: LambdaPoly, novikov_variable: &str, in_stated_window: bool) -> Self {
        let rank = relation.degree().unwrap_or(0);
        QuantumPresentation {
            family,
            ring,
            generators: vec![Generator { symbol: "w".into(), degree: 2 }],
            relations: vec![relation],
            basis: basis_names(rank),
            novikov_variable: novikov_variable.into(),
            in_stated_window,
        }
    }

    /// The bundle relation `w^k(w^{1+m−k} − (−k)^k t^k)` for any `1 ≤ k ≤ m`, without the
    /// window check of [`presentation`].
    pub fn bundle_relation(m: usize, k: usize) -> Result<Self, QhError> {
        if m == 0 || k == 0 || k > m {
            return Err(QhError::ParameterOutOfRange(format!("O(-k) -> P^m needs 1 <= k <= m, got m = {m}, k = {k}")));
        }
        let d = 1 + m - k;
        let a = NovikovScalar::monomial(num_traits::pow(q(-(k as i64)), k), Exponent::from_integer(k as i64));
        let inner = LambdaPoly::binomial(d, a);
        let wk = LambdaPoly::new((0..=k).map(|j| if j == k { NovikovScalar::one() } else { NovikovScalar::zero() }).collect());
        Ok(Self::univariate(Family::NegativeLineBundle { m, k }, Ring::QuantumCohomology, wk.mul(&inner), "t", 2 * k <= m))
    }

    /// Builds a presentation from an arbitrary monic relation in `w`.
    pub fn from_relation(family: Family, ring: Ring, relation: LambdaPoly, novikov_variable: &str) -> Result<Self, QhError> {
        match relation.degree() {
            Some(d) if d >= 1 && relation.coeffs()[d].is_one() => Ok(Self::univariate(family, ring, relation, novikov_variable, true)),
            _ => Err(QhError::InvalidPresentation("the relation must be monic of positive degree".into())),
        }
    }

    pub fn relation(&self) -> &LambdaPoly {
        &self.relations[0]
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn lattice(&self) -> u32 {
        self.relation().lattice()
    }

    pub fn relation_text(&self) -> String {
        self.relation().display_in("w", &self.novikov_variable)
    }

    /// `c1 = multiplicity·w`: `1 + m` on `ℙ^m`, `1 + m − k` on `𝒪(−k) → ℙ^m`.
    pub fn c1_multiplicity(&self) -> i64 {
        match self.family {
            Family::Projective { m } => 1 + m as i64,
            Family::NegativeLineBundle { m, k } => (1 + m - k) as i64,
        }
    }

    /// Matrix of multiplication by `element` (a polynomial in `w`) in the monomial basis;
    /// column `j` is the image of `w^j`.
    pub fn multiplication_matrix(&self, element: &UPoly<RatFunc>) -> Matrix<RatFunc> {
        let n = self.rank();
        let rel = self.relation().to_upoly(self.lattice());
        let mut out = Matrix::zeros(n, n);
        for j in 0..n {
            let col = element.mul(&UPoly::monomial(RatFunc::one(), j)).div_rem(&rel).1;
            for i in 0..n {
                out.set(i, j, col.coeff(i));
            }
        }
        out
    }

    pub fn w_matrix(&self) -> Matrix<RatFunc> {
        self.multiplication_matrix(&UPoly::x())
    }
}

/// The quantum cohomology presentation of a shipped family.
///
/// `ℙ^m`: `Λ[w]/(w^{1+m} − T)`. `𝒪(−k) → ℙ^m`: `Λ[w]/(w^k(w^{1+m−k} − (−k)^k t^k))`, only for
/// `1 ≤ k ≤ m/2`.
pub fn presentation(family: Family) -> Result<QuantumPresentation, QhError> {
    match family {
        Family::Projective { m } => {
            if m == 0 {
                return Err(QhError::ParameterOutOfRange("projective space needs m >= 1".into()));
            }
            let rel = LambdaPoly::binomial(1 + m, NovikovScalar::t_pow(Exponent::one()));
            Ok(QuantumPresentation::univariate(family, Ring::QuantumCohomology, rel, "T", true))
        }
        Family::NegativeLineBundle { m, k } => {
            if k == 0 || 2 * k > m {
                return Err(QhError::ParameterOutOfRange(format!(
                    "the O(-k) -> P^m presentation is known for 1 <= k <= m/2, got m = {m}, k = {k}"
                )));
            }
            QuantumPresentation::bundle_relation(m, k)
        }
    }
}

/// Quantum multiplication by `c1`.
#[derive(Clone, Debug, PartialEq)]
pub struct C1Operator {
    pub multiplicity: i64,
    pub lattice: u32,
    pub novikov_variable: String,
    matrix: Matrix<RatFunc>,
    w_matrix: Option<Matrix<RatFunc>>,
}

impl C1Operator {
    /// An operator given directly by its matrix over `ℚ(s)`, `s = t^{1/lattice}`.
    pub fn from_matrix(matrix: Matrix<RatFunc>, lattice: u32, novikov_variable: &str) -> Self {
        C1Operator { multiplicity: 1, lattice, novikov_variable: novikov_variable.into(), matrix, w_matrix: None }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<RatFunc> {
        &self.matrix
    }

    /// Entries over `Λ`, row-major; `None` if some entry is not a Laurent polynomial in `s`.
    pub fn entries(&self) -> Option<Vec<Vec<NovikovScalar>>> {
        (0..self.rank()).map(|i| self.matrix.row(i).iter().map(|e| e.to_novikov(self.lattice)).collect()).collect()
    }

    /// `[c1, w] = 0` exactly; vacuous for operators built with [`C1Operator::from_matrix`].
    pub fn commutes_with_w(&self) -> bool {
        self.w_matrix.as_ref().is_none_or(|w| self.matrix.mul(w).sub(&w.mul(&self.matrix)).is_zero())
    }
}

/// Multiplication by the family's `c1`, reduced modulo the relation.
pub fn c1_operator(p: &QuantumPresentation) -> C1Operator {
    let c = p.c1_multiplicity();
    let element = UPoly::monomial(RatFunc::constant(q(c)), 1);
    C1Operator {
        multiplicity: c,
        lattice: p.lattice(),
        novikov_variable: p.novikov_variable.clone(),
        matrix: p.multiplication_matrix(&element),
        w_matrix: Some(p.w_matrix()),
    }
}
