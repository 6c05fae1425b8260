use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{NovikovError, Q};

/// Exponent of the formal variable `t`.
pub type Exponent = Ratio<i64>;

/// Where a series stops being known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truncation {
    /// The stored sum is complete.
    Exact,
    /// Everything from `t^r` upwards is unknown.
    At(Exponent),
}

impl Truncation {
    fn min(self, other: Truncation) -> Truncation {
        match (self, other) {
            (Truncation::Exact, o) | (o, Truncation::Exact) => o,
            (Truncation::At(a), Truncation::At(b)) => Truncation::At(a.min(b)),
        }
    }

    fn shifted(self, by: Exponent) -> Truncation {
        match self {
            Truncation::Exact => Truncation::Exact,
            Truncation::At(r) => Truncation::At(r + by),
        }
    }

    fn admits(self, e: &Exponent) -> bool {
        match self {
            Truncation::Exact => true,
            Truncation::At(r) => *e < r,
        }
    }
}

/// Valuation of a scalar: lowest exponent, or `+∞` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Exponent),
    Infinite,
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

/// Which of `Λ0^×`, `Λ+`, `{0}` or only the field `Λ` a scalar belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subring {
    Lambda0Unit,
    LambdaPlus,
    Lambda0NonunitZero,
    FieldOnly,
}

/// An element of the Novikov field with rational exponents on a lattice `(1/N)ℤ`.
#[derive(Clone)]
pub struct NovikovScalar {
    lattice: u32,
    terms: BTreeMap<Exponent, Q>,
    truncation: Truncation,
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn exponent_lattice(e: &Exponent) -> u32 {
    *e.denom() as u32
}

impl NovikovScalar {
    pub fn zero() -> Self {
        NovikovScalar { lattice: 1, terms: BTreeMap::new(), truncation: Truncation::Exact }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, Exponent::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(super::q(n))
    }

    /// `c·t^e`.
    pub fn monomial(c: Q, e: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        let lattice = exponent_lattice(&e);
        if !c.is_zero() {
            terms.insert(e, c);
        }
        NovikovScalar { lattice, terms, truncation: Truncation::Exact }
    }

    /// `t^e`.
    pub fn t_pow(e: Exponent) -> Self {
        Self::monomial(Q::one(), e)
    }

    /// Builds a scalar from arbitrary terms; like exponents are merged and zero
    /// coefficients and terms at or beyond the truncation are dropped.
    pub fn from_terms<I>(terms: I, truncation: Truncation) -> Self
    where
        I: IntoIterator<Item = (Exponent, Q)>,
    {
        let mut map: BTreeMap<Exponent, Q> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Q::zero) += c;
        }
        map.retain(|e, c| !c.is_zero() && truncation.admits(e));
        let lattice = map.keys().map(exponent_lattice).fold(1, lcm);
        NovikovScalar { lattice, terms: map, truncation }
    }

    /// Declares a (possibly finer) lattice `(1/N)ℤ`; fails if a stored exponent is off it.
    pub fn with_lattice(mut self, n: u32) -> Result<Self, NovikovError> {
        if n == 0 {
            return Err(NovikovError::BadLattice);
        }
        for e in self.terms.keys() {
            if !n.is_multiple_of(exponent_lattice(e)) {
                return Err(NovikovError::OffLattice(*e, n));
            }
        }
        self.lattice = n;
        Ok(self)
    }

    pub fn lattice(&self) -> u32 {
        self.lattice
    }

    /// Smallest `N` whose lattice carries every stored exponent.
    pub fn reduced_lattice(&self) -> u32 {
        self.terms.keys().map(exponent_lattice).fold(1, lcm)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Q)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &Exponent) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn is_exact(&self) -> bool {
        self.truncation == Truncation::Exact
    }

    /// True for the exact zero and for a bare `O(t^r)`.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_exact() && self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if this is an exact element of `ℚ`.
    pub fn as_constant(&self) -> Option<&Q> {
        if !self.is_exact() {
            return None;
        }
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&Exponent::zero()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_exact() && (self.terms.is_empty() || self.as_constant().is_some())
    }

    pub fn leading_term(&self) -> Option<(Exponent, &Q)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(e) => Valuation::Finite(*e),
            None => Valuation::Infinite,
        }
    }

    /// Lowest exponent that may carry a nonzero coefficient, counting the
    /// truncation of an empty series.
    fn effective_valuation(&self) -> Option<Exponent> {
        match (self.terms.keys().next(), self.truncation) {
            (Some(e), _) => Some(*e),
            (None, Truncation::At(r)) => Some(r),
            (None, Truncation::Exact) => None,
        }
    }

    pub fn classify(&self) -> Subring {
        match self.valuation() {
            Valuation::Infinite => Subring::Lambda0NonunitZero,
            Valuation::Finite(v) if v.is_zero() => Subring::Lambda0Unit,
            Valuation::Finite(v) if v.is_positive() => Subring::LambdaPlus,
            Valuation::Finite(_) => Subring::FieldOnly,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return NovikovScalar { lattice: self.lattice, terms: BTreeMap::new(), truncation: self.truncation };
        }
        NovikovScalar {
            lattice: self.lattice,
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
            truncation: self.truncation,
        }
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: Exponent) -> Self {
        NovikovScalar {
            lattice: lcm(self.lattice, exponent_lattice(&e)),
            terms: self.terms.iter().map(|(x, a)| (*x + e, a.clone())).collect(),
            truncation: self.truncation.shifted(e),
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let truncation = self.truncation.min(other.truncation);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(Q::zero);
            *entry += c;
        }
        terms.retain(|e, c| !c.is_zero() && truncation.admits(e));
        NovikovScalar { lattice: lcm(self.lattice, other.lattice), terms, truncation }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        if self.is_exact() && other.is_exact() {
            for (e, c) in &other.terms {
                let entry = self.terms.entry(*e).or_insert_with(Q::zero);
                *entry += c;
                if entry.is_zero() {
                    self.terms.remove(e);
                }
            }
            self.lattice = lcm(self.lattice, other.lattice);
        } else {
            *self = self.add_ref(other);
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// Cauchy product. The truncation of the product is the first exponent at
    /// which an unknown term of either factor can contribute.
    pub fn mul_ref(&self, other: &Self) -> Self {
        let lattice = lcm(self.lattice, other.lattice);
        let (va, vb) = (self.effective_valuation(), other.effective_valuation());
        let truncation = match (va, vb) {
            (None, _) | (_, None) => {
                return NovikovScalar { lattice, terms: BTreeMap::new(), truncation: Truncation::Exact };
            }
            (Some(va), Some(vb)) => other.truncation.shifted(va).min(self.truncation.shifted(vb)),
        };
        let mut terms: BTreeMap<Exponent, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = *ea + *eb;
                if !truncation.admits(&e) {
                    continue;
                }
                *terms.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        NovikovScalar { lattice, terms, truncation }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = NovikovScalar::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Drops every term at or beyond `t^r` and records the truncation.
    pub fn truncate(&self, r: Exponent) -> Self {
        let truncation = self.truncation.min(Truncation::At(r));
        NovikovScalar {
            lattice: self.lattice,
            terms: self.terms.iter().filter(|(e, _)| truncation.admits(e)).map(|(e, c)| (*e, c.clone())).collect(),
            truncation,
        }
    }

    /// Inverse with `self · result = 1 + O(t^order)`.
    ///
    /// The leading term is inverted exactly and the tail is expanded as a
    /// geometric series. Monomials invert exactly regardless of `order`.
    pub fn invert(&self, order: Exponent) -> Result<Self, NovikovError> {
        let (v, lead) = match self.leading_term() {
            Some((v, c)) => (v, c.clone()),
            None => return Err(NovikovError::ZeroDivision),
        };
        let lead_inv = Q::one() / &lead;
        if self.terms.len() == 1 && self.is_exact() {
            return Ok(NovikovScalar::monomial(lead_inv, -v).with_lattice(self.lattice).expect("lattice"));
        }
        // self = lead·t^v·(1 + u), u with strictly positive exponents
        let u = NovikovScalar {
            lattice: self.lattice,
            terms: self.terms.iter().skip(1).map(|(e, c)| (*e - v, c * &lead_inv)).collect(),
            truncation: self.truncation.shifted(-v),
        };
        let mut precision = order;
        if let Truncation::At(r) = u.truncation {
            precision = precision.min(r);
        }
        let neg_u = u.neg_ref().truncate(precision);
        let mut series = NovikovScalar::one().truncate(precision);
        let mut power = NovikovScalar::one();
        loop {
            power = power.mul_ref(&neg_u).truncate(precision);
            if power.is_zero() {
                break;
            }
            series = series.add_ref(&power);
        }
        let series = series.truncate(precision);
        Ok(series.scale(&lead_inv).shift(-v))
    }

    /// Replaces `t` by `t^p`.
    pub fn substitute_power(&self, p: Exponent) -> Self {
        NovikovScalar::from_terms(
            self.terms.iter().map(|(e, c)| (*e * p, c.clone())),
            match self.truncation {
                Truncation::Exact => Truncation::Exact,
                Truncation::At(r) => Truncation::At(r * p),
            },
        )
    }

    /// Numerical value at a positive real `t`.
    pub fn eval_f64(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * t.powf(*e.numer() as f64 / *e.denom() as f64))
            .sum()
    }

    /// Value at a rational `t`, when every exponent is an integer.
    pub fn eval_rational(&self, t: &Q) -> Option<Q> {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            if !e.is_integer() {
                return None;
            }
            let n = e.to_integer();
            let tp = if n >= 0 { num_traits::pow(t.clone(), n as usize) } else { Q::one() / num_traits::pow(t.clone(), (-n) as usize) };
            acc += c * tp;
        }
        Some(acc)
    }
}

impl PartialEq for NovikovScalar {
    fn eq(&self, other: &Self) -> bool {
        self.truncation == other.truncation && self.terms == other.terms
    }
}

impl Eq for NovikovScalar {}

impl std::hash::Hash for NovikovScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.truncation.hash(state);
        for (e, c) in &self.terms {
            e.hash(state);
            c.hash(state);
        }
    }
}

impl Default for NovikovScalar {
    fn default() -> Self {
        NovikovScalar::zero()
    }
}

impl fmt::Debug for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<Q> for NovikovScalar {
    fn from(c: Q) -> Self {
        NovikovScalar::constant(c)
    }
}

impl From<i64> for NovikovScalar {
    fn from(n: i64) -> Self {
        NovikovScalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&NovikovScalar> for &NovikovScalar {
            type Output = NovikovScalar;
            fn $m(self, rhs: &NovikovScalar) -> NovikovScalar {
                self.$imp(rhs)
            }
        }
        impl $tr<NovikovScalar> for NovikovScalar {
            type Output = NovikovScalar;
            fn $m(self, rhs: NovikovScalar) -> NovikovScalar {
                (&self).$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &NovikovScalar {
    type Output = NovikovScalar;
    fn neg(self) -> NovikovScalar {
        self.neg_ref()
    }
}

impl Neg for NovikovScalar {
    type Output = NovikovScalar;
    fn neg(self) -> NovikovScalar {
        self.neg_ref()
    }
}
