use std::fmt;

use super::{Field, Matrix};

/// Dense univariate polynomial over an exact field, coefficients from low to high degree.
#[derive(Clone, PartialEq)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(F::neg).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].div(&lead);
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j].sub(&c.mul(b));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c.div(&lead)).collect())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Whether `self` divides `o`.
    pub fn divides(&self, o: &Self) -> bool {
        !self.is_zero() && o.div_rem(self).1.is_zero()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul(&F::from_i64(i as i64))).collect())
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Evaluates at a square matrix.
    pub fn eval_matrix(&self, a: &Matrix<F>) -> Matrix<F> {
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&Matrix::identity(n).scale(c));
        }
        acc
    }

    /// Maps coefficients into another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// `p(x) ↦ c^{deg p}·p(x/c)`, which multiplies every root by `c`.
    pub fn scale_roots(&self, c: &F) -> Self {
        let Some(d) = self.degree() else { return Self::zero() };
        let mut pw = F::one();
        let mut out = vec![F::zero(); d + 1];
        for i in (0..=d).rev() {
            out[i] = self.coeffs[i].mul(&pw);
            pw = pw.mul(c);
        }
        Self::new(out)
    }

    /// Square-free decomposition (Yun): monic `(f_i, i)` with `monic(self) = Π f_i^i`, trivial factors omitted.
    ///
    /// Valid in characteristic zero.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().is_none_or(|d| d == 0) {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

/// Characteristic polynomial `det(x·I − A)` by Faddeev–LeVerrier.
pub fn char_poly<F: Field>(a: &Matrix<F>) -> UPoly<F> {
    let n = a.rows();
    let mut coeffs = vec![F::zero(); n + 1];
    coeffs[n] = F::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&Matrix::identity(n).scale(&coeffs[n + 1 - k]));
        let tr = a.mul(&m).trace();
        coeffs[n - k] = tr.neg().div(&F::from_i64(k as i64));
    }
    UPoly::new(coeffs)
}

impl<F: Field + fmt::Display> UPoly<F> {
    /// Highest degree first; coefficients are parenthesized.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = if *c == F::one() { String::new() } else { format!("({c})") };
                match (i, c.is_empty()) {
                    (0, true) => "1".to_string(),
                    (0, false) => c,
                    (1, true) => var.to_string(),
                    (1, false) => format!("{c}*{var}"),
                    (_, true) => format!("{var}^{i}"),
                    (_, false) => format!("{c}*{var}^{i}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<F: Field> fmt::Debug for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}
