use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ToricError;
use crate::linalg::Matrix;
use crate::novikov::{q, qserde, Q};

/// One inequality `⟨y, normal⟩ ≥ constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Facet {
    pub normal: Vec<i64>,
    #[serde(with = "qserde")]
    pub constant: Q,
}

/// Outcome of the Delzant check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelzantCheck {
    pub passed: bool,
    pub vertices: usize,
    /// Vertices where the tight normals are not exactly `n` vectors forming a `ℤ`-basis.
    pub failing_vertices: usize,
}

/// `Δ = { y ∈ ℝⁿ : ⟨y, e_i⟩ ≥ λ_i }` with primitive integer normals.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentPolytope {
    dim: usize,
    facets: Vec<Facet>,
    has_interior: bool,
    delzant: DelzantCheck,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeJson {
    dim: usize,
    facets: Vec<Facet>,
}

/// The shipped families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// `ℙ^m`.
    Projective { m: usize },
    /// The total space of `𝒪(−k) → ℙ^m`.
    NegativeLineBundle { m: usize, k: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Projective { m } => write!(f, "P^{m}"),
            Family::NegativeLineBundle { m, k } => write!(f, "O(-{k}) -> P^{m}"),
        }
    }
}

impl MomentPolytope {
    /// Validates primitivity and nonemptiness, and records the Delzant check.
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self, ToricError> {
        if dim == 0 {
            return Err(ToricError::InvalidPolytope("dimension must be positive".into()));
        }
        for f in &facets {
            if f.normal.len() != dim {
                return Err(ToricError::InvalidPolytope(format!("normal {:?} is not in Z^{dim}", f.normal)));
            }
            let g = f.normal.iter().fold(0i64, |g, &x| g.gcd(&x));
            if g != 1 {
                return Err(ToricError::InvalidPolytope(format!("normal {:?} is not primitive", f.normal)));
            }
        }
        let ineqs: Vec<Ineq> = facets.iter().map(|f| Ineq { a: f.normal.iter().map(|&x| q(x)).collect(), b: f.constant.clone(), strict: false }).collect();
        if !fourier_motzkin(ineqs.clone()) {
            return Err(ToricError::InvalidPolytope("the inequalities have no common solution".into()));
        }
        let has_interior = fourier_motzkin(ineqs.into_iter().map(|i| Ineq { strict: true, ..i }).collect());
        let delzant = delzant_check(dim, &facets);
        Ok(MomentPolytope { dim, facets, has_interior, delzant })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn has_interior(&self) -> bool {
        self.has_interior
    }

    pub fn delzant(&self) -> &DelzantCheck {
        &self.delzant
    }

    /// Whether `y` satisfies every inequality strictly.
    pub fn contains_strictly(&self, y: &[Q]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, y) > f.constant)
    }

    /// Floating-point version of [`MomentPolytope::contains_strictly`] with slack `tol`.
    pub fn contains_strictly_f64(&self, y: &[f64], tol: f64) -> bool {
        use num_traits::ToPrimitive;
        self.facets.iter().all(|f| {
            let v: f64 = f.normal.iter().zip(y).map(|(&a, &b)| a as f64 * b).sum();
            v > f.constant.to_f64().unwrap_or(f64::NAN) + tol
        })
    }

    /// The shipped family with the same facet set, if any.
    pub fn recognize(&self) -> Option<Family> {
        let mine: BTreeSet<&Facet> = self.facets.iter().collect();
        let mut candidates = vec![Family::Projective { m: self.dim }];
        if self.dim >= 2 {
            candidates.extend((1..self.dim).map(|k| Family::NegativeLineBundle { m: self.dim - 1, k }));
        }
        candidates.into_iter().find(|fam| {
            let p = family_facets(*fam);
            p.len() == self.facets.len() && p.iter().collect::<BTreeSet<_>>() == mine
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolytopeJson { dim: self.dim, facets: self.facets.clone() }).expect("polytope serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, ToricError> {
        let p: PolytopeJson = serde_json::from_str(s).map_err(|e| ToricError::Json(e.to_string()))?;
        Self::new(p.dim, p.facets)
    }
}

fn dot(a: &[i64], y: &[Q]) -> Q {
    a.iter().zip(y).fold(Q::zero(), |acc, (&x, v)| acc + q(x) * v)
}

fn family_facets(family: Family) -> Vec<Facet> {
    let unit = |n: usize, i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(j == i)).collect() };
    match family {
        Family::Projective { m } => {
            let mut f: Vec<Facet> = (0..m).map(|i| Facet { normal: unit(m, i), constant: Q::zero() }).collect();
            f.push(Facet { normal: vec![-1; m], constant: q(-1) });
            f
        }
        Family::NegativeLineBundle { m, k } => {
            let n = m + 1;
            let mut f: Vec<Facet> = (0..n).map(|i| Facet { normal: unit(n, i), constant: Q::zero() }).collect();
            let mut last = vec![-1; m];
            last.push(k as i64);
            f.push(Facet { normal: last, constant: q(-(k as i64)) });
            f
        }
    }
}

/// The moment polytope of a shipped family.
///
/// `ℙ^m`: `y_i ≥ 0`, `Σ y_j ≤ 1`. `𝒪(−k) → ℙ^m` (needs `1 ≤ k ≤ m`): `y_i ≥ 0` for
/// `i ≤ m + 1` and `Σ_{j ≤ m} y_j − k·y_{m+1} ≤ k`.
pub fn family_polytope(family: Family) -> Result<MomentPolytope, ToricError> {
    match family {
        Family::Projective { m: 0 } => Err(ToricError::ParameterOutOfRange("projective space needs m >= 1".into())),
        Family::NegativeLineBundle { m, k } if m == 0 || k == 0 || k > m => {
            Err(ToricError::ParameterOutOfRange(format!("O(-k) -> P^m needs 1 <= k <= m, got m = {m}, k = {k}")))
        }
        Family::Projective { m } => MomentPolytope::new(m, family_facets(family)),
        Family::NegativeLineBundle { m, .. } => MomentPolytope::new(m + 1, family_facets(family)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Ineq {
    a: Vec<Q>,
    b: Q,
    strict: bool,
}

impl Ineq {
    /// Scales so that the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(p) = self.a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
            for x in self.a.iter_mut() {
                *x /= &p;
            }
            self.b /= p;
        }
        self
    }
}

/// Feasibility of `a·y ≥ b` (or `>` when strict) by Fourier–Motzkin elimination.
fn fourier_motzkin(mut ineqs: Vec<Ineq>) -> bool {
    let n = ineqs.first().map_or(0, |i| i.a.len());
    for j in 0..n {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for i in ineqs {
            if i.a[j].is_positive() {
                pos.push(i);
            } else if i.a[j].is_negative() {
                neg.push(i);
            } else {
                rest.insert(i);
            }
        }
        for p in &pos {
            for m in &neg {
                let (cp, cm) = (-m.a[j].clone(), p.a[j].clone());
                let a = p.a.iter().zip(&m.a).map(|(x, y)| x * &cp + y * &cm).collect();
                let b = &p.b * &cp + &m.b * &cm;
                rest.insert(Ineq { a, b, strict: p.strict || m.strict }.normalized());
            }
        }
        ineqs = rest.into_iter().collect();
    }
    ineqs.iter().all(|i| if i.strict { i.b.is_negative() } else { !i.b.is_positive() })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn delzant_check(dim: usize, facets: &[Facet]) -> DelzantCheck {
    let mut vertices: BTreeSet<Vec<Q>> = BTreeSet::new();
    for s in subsets(facets.len(), dim) {
        let a = Matrix::from_rows(s.iter().map(|&i| facets[i].normal.iter().map(|&x| q(x)).collect()).collect());
        if a.determinant().is_zero() {
            continue;
        }
        let b: Vec<Q> = s.iter().map(|&i| facets[i].constant.clone()).collect();
        let Some(y) = a.solve(&b) else { continue };
        if facets.iter().all(|f| dot(&f.normal, &y) >= f.constant) {
            vertices.insert(y);
        }
    }
    let failing = vertices
        .iter()
        .filter(|y| {
            let tight: Vec<&Facet> = facets.iter().filter(|f| dot(&f.normal, y) == f.constant).collect();
            if tight.len() != dim {
                return true;
            }
            let det = Matrix::from_rows(tight.iter().map(|f| f.normal.iter().map(|&x| q(x)).collect()).collect()).determinant();
            det.abs() != Q::one()
        })
        .count();
    DelzantCheck { passed: !vertices.is_empty() && failing == 0, vertices: vertices.len(), failing_vertices: failing }
}
