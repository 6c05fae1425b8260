use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{C1Operator, LambdaPoly};
use crate::linalg::{char_poly, Matrix, QPoly, RatFunc, UPoly};
use crate::novikov::Q;

/// One factor `p` of the characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumFactor {
    /// Monic in `λ`.
    pub factor: LambdaPoly,
    pub text: String,
    pub degree: usize,
    /// Exponent of `p` in the characteristic polynomial.
    pub multiplicity: usize,
    /// `dim ker p(c1)^rank`: the generalized eigensummands of all roots of `p` together.
    pub summand_dim: usize,
    /// `p = λ`.
    pub zero: bool,
    /// Irreducibility over `ℚ(t^{1/N})` is certified (degree one, or a binomial passing
    /// Capelli's test).
    pub irreducible: bool,
}

impl SpectrumFactor {
    /// Dimension of the generalized eigensummand of each single root. Factors are
    /// square-free and coprime, so every root of one factor has the same dimension.
    pub fn per_root_dim(&self) -> usize {
        self.summand_dim / self.degree.max(1)
    }
}

/// The factored characteristic polynomial of a `c1` operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDescriptor {
    pub rank: usize,
    /// Coefficients live in `ℚ[t^{±1/lattice}]`.
    pub lattice: u32,
    pub novikov_variable: String,
    pub char_poly: LambdaPoly,
    pub char_poly_text: String,
    /// Pairwise coprime, the zero factor first.
    pub factors: Vec<SpectrumFactor>,
    pub zero_block_dim: usize,
}

impl SpectrumDescriptor {
    /// The same data with every eigenvalue multiplied by the rational unit `u`.
    pub fn rescaled(&self, u: &Q) -> Self {
        let scale = |p: &LambdaPoly| p.scale_roots(u);
        let var = self.novikov_variable.as_str();
        let char_poly = scale(&self.char_poly);
        SpectrumDescriptor {
            char_poly_text: char_poly.display_in("λ", var),
            char_poly,
            factors: self
                .factors
                .iter()
                .map(|f| {
                    let factor = scale(&f.factor);
                    SpectrumFactor { text: factor.display_in("λ", var), factor, ..f.clone() }
                })
                .collect(),
            ..self.clone()
        }
    }
}

/// Factors the characteristic polynomial of `op` and measures the generalized eigensummands.
pub fn spectrum(op: &C1Operator) -> SpectrumDescriptor {
    let n = op.rank();
    let lat = op.lattice.max(1);
    let var = op.novikov_variable.as_str();
    let m = op.matrix();
    let chi = char_poly(m);
    let char_poly = LambdaPoly::from_upoly(&chi, lat).expect("characteristic polynomial of a Laurent matrix");
    let mut pieces: Vec<(UPoly<RatFunc>, usize)> = Vec::new();
    for (g, mult) in chi.squarefree_decomposition() {
        let g = if g.coeff(0).is_zero() {
            pieces.push((UPoly::x(), mult));
            g.div_rem(&UPoly::x()).0
        } else {
            g
        };
        if g.degree().unwrap_or(0) > 0 {
            pieces.extend(split_binomial(g).into_iter().map(|f| (f, mult)));
        }
    }
    let mut factors: Vec<SpectrumFactor> = pieces
        .into_iter()
        .map(|(g, multiplicity)| {
            let factor = LambdaPoly::from_upoly(&g, lat).expect("monic factors of a monic Laurent polynomial are Laurent");
            let degree = g.degree().unwrap_or(0);
            SpectrumFactor {
                text: factor.display_in("λ", var),
                summand_dim: generalized_dim(&g, m, n),
                zero: degree == 1 && g.coeff(0).is_zero(),
                irreducible: certified_irreducible(&g),
                factor,
                degree,
                multiplicity,
            }
        })
        .collect();
    factors.sort_by(|a, b| (!a.zero, a.degree, &a.text).cmp(&(!b.zero, b.degree, &b.text)));
    let zero_block_dim = factors.iter().find(|f| f.zero).map_or(0, |f| f.summand_dim);
    SpectrumDescriptor {
        rank: n,
        lattice: lat,
        novikov_variable: var.to_string(),
        char_poly_text: char_poly.display_in("λ", var),
        char_poly,
        factors,
        zero_block_dim,
    }
}

/// `dim ker g(M)^n`.
fn generalized_dim(g: &UPoly<RatFunc>, m: &Matrix<RatFunc>, n: usize) -> usize {
    let gm = g.eval_matrix(m);
    n - gm.pow(n).rank()
}

/// Splits `x^n − b^p` (`p | n` prime) as `(x^{n/p} − b)·Σ_i x^{(n/p)(p−1−i)} b^i`, recursively on
/// the binomial pieces. Other polynomials are returned unchanged.
fn split_binomial(g: UPoly<RatFunc>) -> Vec<UPoly<RatFunc>> {
    let Some(n) = binomial_degree(&g) else { return vec![g] };
    let a = g.coeff(0).neg();
    for p in prime_divisors(n) {
        let Some(b) = pth_root(&a, p) else { continue };
        let e = n / p;
        let first = UPoly::monomial(RatFunc::one(), e).sub(&UPoly::constant(b.clone()));
        let (rest, rem) = g.div_rem(&first);
        debug_assert!(rem.is_zero());
        let mut out = split_binomial(first);
        out.extend(split_binomial(rest));
        return out;
    }
    vec![g]
}

/// `Some(n)` if `g = x^n − a` with `a ≠ 0` and `n ≥ 2`.
fn binomial_degree(g: &UPoly<RatFunc>) -> Option<usize> {
    let n = g.degree()?;
    (n >= 2 && (1..n).all(|j| g.coeff(j).is_zero()) && !g.coeff(0).is_zero()).then_some(n)
}

fn prime_divisors(n: usize) -> impl Iterator<Item = usize> {
    (2..=n).filter(move |&p| n.is_multiple_of(p) && (2..p).all(|d| p % d != 0))
}

/// Degree one, or `x^n − a` with `a` not a `p`-th power for primes `p | n` and
/// `a ∉ −4K⁴` when `4 | n` (Capelli). Anything else is reported as not certified.
pub(crate) fn certified_irreducible(g: &UPoly<RatFunc>) -> bool {
    if g.degree() == Some(1) {
        return true;
    }
    let Some(n) = binomial_degree(g) else { return false };
    let a = g.coeff(0).neg();
    if prime_divisors(n).any(|p| pth_root(&a, p).is_some()) {
        return false;
    }
    n % 4 != 0 || pth_root(&a.neg().div(&RatFunc::constant(Q::from_integer(4.into()))), 4).is_none()
}

/// A `p`-th root of `a` in `ℚ(s)`, if one exists.
fn pth_root(a: &RatFunc, p: usize) -> Option<RatFunc> {
    let (num, den) = (a.num(), a.den());
    let c = rational_root(&(num.leading() / den.leading()), p)?;
    let n = monic_root(&num.monic(), p)?;
    let d = monic_root(&den.monic(), p)?;
    Some(RatFunc::new(n.scale(&c), d))
}

fn monic_root(f: &QPoly, p: usize) -> Option<QPoly> {
    let parts = UPoly::new(f.coeffs().to_vec()).squarefree_decomposition();
    parts.iter().try_fold(QPoly::one(), |acc, (g, i)| (i % p == 0).then(|| acc.mul(&QPoly::new(g.coeffs().to_vec()).pow(i / p))))
}

fn rational_root(c: &Q, p: usize) -> Option<Q> {
    let root = |x: &BigInt| -> Option<BigInt> {
        let (neg, y) = (x.is_negative(), x.abs());
        if neg && p.is_multiple_of(2) {
            return None;
        }
        let r = y.nth_root(p as u32);
        (r.pow(p as u32) == y).then(|| if neg { -r } else { r })
    };
    Some(Q::new(root(c.numer())?, root(c.denom())?))
}
