use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::QPoly;
use crate::novikov::{Exponent, NovikovError, NovikovScalar, Truncation, Q};

/// Element of `ℚ(s)`, kept as `num/den` with `gcd = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: QPoly::one(), den: QPoly::one() }
    }

    pub fn constant(c: Q) -> Self {
        RatFunc { num: QPoly::constant(c), den: QPoly::one() }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc { num: p, den: QPoly::one() }
    }

    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = Q::one() / den.leading();
            return RatFunc { num: num.scale(&inv), den: QPoly::one() };
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let inv = Q::one() / d.leading();
        RatFunc { num: n.scale(&inv), den: d.scale(&inv) }
    }

    /// `Σ c_k s^k` with possibly negative `k`.
    pub fn from_laurent<I: IntoIterator<Item = (i64, Q)>>(terms: I) -> Self {
        let terms: Vec<(i64, Q)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|(k, _)| *k).min().unwrap_or(0).min(0);
        let high = terms.iter().map(|(k, _)| *k).max().unwrap_or(0);
        let mut coeffs = vec![Q::zero(); (high - low + 1) as usize];
        for (k, c) in terms {
            coeffs[(k - low) as usize] += c;
        }
        Self::new(QPoly::new(coeffs), QPoly::monomial(Q::one(), (-low) as usize))
    }

    /// Maps an exact scalar on the lattice `(1/n)ℤ` to `ℚ(s)` with `s = t^{1/n}`.
    pub fn from_novikov(a: &NovikovScalar, n: u32) -> Result<Self, NovikovError> {
        if !a.is_exact() {
            return Err(NovikovError::Truncated);
        }
        let mut terms = Vec::new();
        for (e, c) in a.terms() {
            let scaled = *e * Exponent::from_integer(n as i64);
            if !scaled.is_integer() {
                return Err(NovikovError::OffLattice(*e, n));
            }
            terms.push((scaled.to_integer(), c.clone()));
        }
        Ok(Self::from_laurent(terms))
    }

    /// Inverse of [`RatFunc::from_novikov`] when the value is a Laurent polynomial in `s`.
    pub fn to_novikov(&self, n: u32) -> Option<NovikovScalar> {
        let k = self.den.degree()?;
        if self.den != QPoly::monomial(Q::one(), k) {
            return None;
        }
        let terms = self.num.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
            let power = i as i64 - k as i64;
            (Ratio::new(power, n as i64), c.clone())
        });
        Some(NovikovScalar::from_terms(terms.collect::<Vec<_>>(), Truncation::Exact))
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == QPoly::one() && self.den == QPoly::one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den == QPoly::one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    /// Value at `s = x`; `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let n = self.num.eval_complex(num_complex::Complex64::new(x, 0.0)).re;
        let d = self.den.eval_complex(num_complex::Complex64::new(x, 0.0)).re;
        n / d
    }

    /// Leading coefficient and `s`-adic valuation of the Laurent expansion at `s = 0`.
    pub fn s_valuation(&self) -> Option<(i64, Q)> {
        let nl = self.num.low_degree()?;
        let dl = self.den.low_degree().expect("nonzero denominator");
        Some((nl as i64 - dl as i64, self.num.coeff(nl) / self.den.coeff(dl)))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == QPoly::one() {
            write!(f, "{}", self.num.display_in("s"))
        } else {
            write!(f, "({}) / ({})", self.num.display_in("s"), self.den.display_in("s"))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Common lattice of a set of scalars.
pub fn common_lattice<'a, I: IntoIterator<Item = &'a NovikovScalar>>(items: I) -> u32 {
    items.into_iter().map(|a| a.reduced_lattice()).fold(1, |a, b| a.lcm(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::q;

    #[test]
    fn normalizes() {
        // (s^2 - 1)/(s - 1) = s + 1
        let r = RatFunc::new(QPoly::new(vec![q(-1), q(0), q(1)]), QPoly::new(vec![q(-1), q(1)]));
        assert_eq!(r, RatFunc::from_poly(QPoly::new(vec![q(1), q(1)])));
    }

    #[test]
    fn field_ops() {
        let s = RatFunc::from_poly(QPoly::x());
        let inv = s.inv();
        assert!(s.mul(&inv).is_one());
        assert_eq!(s.add(&s.neg()), RatFunc::zero());
    }

    #[test]
    fn novikov_round_trip() {
        let a: NovikovScalar = "2*t^(-1/2) + 3*t^(1)".parse().unwrap();
        let r = RatFunc::from_novikov(&a, 2).unwrap();
        assert_eq!(r.to_novikov(2).unwrap(), a);
        assert_eq!(r.s_valuation(), Some((-1, q(2))));
    }
}
